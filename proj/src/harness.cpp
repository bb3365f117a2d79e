#include "swe1d/harness.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "swe1d/csv.hpp"
#include "swe1d/scheme.hpp"

namespace swe1d {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Reference still-water depth shared by the built-in scenarios (m).
constexpr double kRefDepth = 5e-3;

ChannelGeometry reference_geometry() {
    ChannelGeometry g;
    g.T = 348.0;
    g.P = 366.4;
    g.n1 = 0.025;
    g.tau_bar = 1.329;
    g.rho = 1000.0;
    g.g = 10.0;
    return g;
}

NamedScenario dambreak_preset() {
    NamedScenario ns;
    ns.name = "dressler-dambreak";
    ns.scenario.geometry = reference_geometry();
    ns.scenario.grid = GridSpec::make(1.0, 1.0, 1.0 / 16, 1.0 / 128);

    DamBreakParams p;
    p.h_l = kRefDepth;
    p.x0 = 0.5;
    p.C = 40.0;
    p.g = ns.scenario.geometry.g;
    p.L = ns.scenario.grid.L;
    p.u0_plateau = 0.1;
    ns.dam_break = p;

    ns.scenario.rainfall = {1.18e-5, 0.0, 1.0, 0.0, 1.0, 1.0};
    ns.scenario.A_min = 1e-8;
    // Supremum velocity of the exact solution; caps the wet/dry front.
    ns.scenario.u_max = 2.0 * std::sqrt(p.g * p.h_l);
    ns.scenario.boundary_mode = BoundaryMode::zero_gradient_ghost;

    const double T = ns.scenario.geometry.T;
    const double A_min = ns.scenario.A_min;
    ns.initial_builder = [p, T, A_min](const GridSpec& gr) {
        return initial_state(gr, p, T, A_min);
    };
    ns.scenario.initial = ns.initial_builder(ns.scenario.grid);
    return ns;
}

NamedScenario garoua_preset() {
    NamedScenario ns;
    ns.name = "garoua-flume";
    ns.scenario.geometry = reference_geometry();
    // Shear stress balancing a 4% slope at the reference depth:
    // tau = slope * rho * g * A_ref / P.
    const double A_ref = ns.scenario.geometry.T * kRefDepth;
    ns.scenario.geometry.tau_bar =
        0.04 * ns.scenario.geometry.rho * ns.scenario.geometry.g * A_ref /
        ns.scenario.geometry.P;

    ns.scenario.grid = GridSpec::make(1150.0, 1.0, 5.75, 1.0 / 128);
    // Rainfall everywhere except the last 150 m of the flume.
    ns.scenario.rainfall = {1.18e-5, 0.0, 1.0, 0.0, 1000.0, ns.scenario.geometry.T};
    ns.scenario.A_min = 1e-8;
    ns.scenario.u_max = 2.0 * std::sqrt(ns.scenario.geometry.g * kRefDepth);
    ns.scenario.boundary_mode = BoundaryMode::zero_gradient_ghost;

    const double A_min = ns.scenario.A_min;
    ns.initial_builder = [A_min](const GridSpec& gr) {
        FlowState s;
        s.A.assign(gr.M + 1, A_min);
        s.Q.assign(gr.M + 1, 0.0);
        return s;
    };
    ns.scenario.initial = ns.initial_builder(ns.scenario.grid);
    return ns;
}

NamedScenario uniform_preset() {
    NamedScenario ns;
    ns.name = "uniform-steady";
    ns.scenario.geometry = reference_geometry();
    ns.scenario.geometry.tau_bar = 0.0;  // flat channel, nothing drives flow
    ns.scenario.grid = GridSpec::make(1.0, 1.0, 1.0 / 16, 1.0 / 128);
    ns.scenario.rainfall = {0.0, 0.0, 0.0, 0.0, 0.0, ns.scenario.geometry.T};
    ns.scenario.A_min = 1e-8;
    ns.scenario.boundary_mode = BoundaryMode::zero_gradient_ghost;

    const double A0 = ns.scenario.geometry.T * kRefDepth;
    ns.initial_builder = [A0](const GridSpec& gr) {
        FlowState s;
        s.A.assign(gr.M + 1, A0);
        s.Q.assign(gr.M + 1, 0.0);
        return s;
    };
    ns.scenario.initial = ns.initial_builder(ns.scenario.grid);
    return ns;
}

}  // namespace

NamedScenario preset(const std::string& name) {
    if (name == "dressler-dambreak") return dambreak_preset();
    if (name == "garoua-flume") return garoua_preset();
    if (name == "uniform-steady") return uniform_preset();
    throw config_error("unknown preset: " + name);
}

Scenario scenario_on_grid(const NamedScenario& base, double dt, double dx, BoundaryMode mode) {
    Scenario sc = base.scenario;
    sc.grid = GridSpec::make(base.scenario.grid.L, base.scenario.grid.T1, dx, dt);
    if (!base.initial_builder) throw config_error("scenario has no initial-state builder");
    sc.initial = base.initial_builder(sc.grid);
    sc.boundary_mode = mode;
    if (mode == BoundaryMode::analytic_dirichlet) {
        if (!base.dam_break)
            throw config_error("analytic boundary mode needs dam-break parameters");
        sc.analytic_ghost = analytic_sampler(*base.dam_break, sc.geometry.T, sc.A_min);
    } else {
        sc.analytic_ghost = nullptr;
    }
    return sc;
}

ValidationCase validation_case(const NamedScenario& base, double dt, double dx) {
    if (!base.dam_break)
        throw config_error("validation protocol needs a dam-break scenario");

    ValidationCase vc;
    vc.params = *base.dam_break;
    vc.params.C = kInf;          // frictionless limit
    vc.params.u0_plateau = 0.0;  // still plateau

    vc.scenario = base.scenario;
    vc.scenario.geometry.tau_bar = 0.0;   // flat
    vc.scenario.geometry.n1 = 1e-12;      // resistance off (must stay positive)
    vc.scenario.grid = GridSpec::make(vc.params.L, base.scenario.grid.T1, dx, dt);

    const double T = vc.scenario.geometry.T;
    vc.scenario.initial = initial_state(vc.scenario.grid, vc.params, T, vc.scenario.A_min);
    // Seed the dam node with the cell-average area so the initial jump does
    // not leave a standing expansion discontinuity at the dam.
    const int j0 = static_cast<int>(std::llround(vc.params.x0 / dx));
    if (j0 >= 0 && j0 <= vc.scenario.grid.M &&
        std::fabs(j0 * dx - vc.params.x0) <= 1e-9 * vc.params.L) {
        vc.scenario.initial.A[j0] = 0.5 * T * vc.params.h_l;
        vc.scenario.initial.Q[j0] = 0.0;
    }

    vc.scenario.boundary_mode = BoundaryMode::analytic_dirichlet;
    vc.scenario.analytic_ghost = analytic_sampler(vc.params, T, vc.scenario.A_min);
    vc.exact = exact_evaluator(vc.params, T);
    return vc;
}

namespace {

struct RungResult {
    ErrorPair errors;
    std::string csv;  // empty when the rung failed or files are disabled
    bool failed = false;
};

RungResult run_one_rung(const StudySpec& spec, double dt, double dx) {
    RungResult r;
    ValidationCase vc = validation_case(spec.base, dt, dx);
    try {
        const std::vector<FlowState> levels = run(vc.scenario, 1);
        r.errors = error_norms(levels, vc.exact, vc.scenario.grid);
        if (!spec.out_dir.empty())
            r.csv = run_csv(levels, vc.scenario.grid, spec.with_oracle ? &vc.exact : nullptr);
    } catch (const blowup_error&) {
        r.failed = true;
        r.errors = {kNaN, kNaN, dt, dx, vc.scenario.grid.N, vc.scenario.grid.M};
    }
    return r;
}

}  // namespace

ConvergenceReport run_convergence_study(const StudySpec& spec) {
    if (spec.ladder.empty()) throw config_error("convergence study: empty ladder");
    const int n = static_cast<int>(spec.ladder.size());
    std::vector<RungResult> results(n);

    if (spec.jobs > 1) {
        std::vector<std::future<RungResult>> futs;
        futs.reserve(n);
        for (int i = 0; i < n; ++i)
            futs.push_back(std::async(std::launch::async, [&spec, i] {
                return run_one_rung(spec, spec.ladder[i].first, spec.ladder[i].second);
            }));
        for (int i = 0; i < n; ++i) results[i] = futs[i].get();
    } else {
        for (int i = 0; i < n; ++i)
            results[i] = run_one_rung(spec, spec.ladder[i].first, spec.ladder[i].second);
    }

    std::vector<ErrorPair> pairs;
    pairs.reserve(n);
    for (const RungResult& r : results) pairs.push_back(r.errors);
    ConvergenceReport report = convergence_ratios(pairs);

    if (!spec.out_dir.empty()) {
        for (int i = 0; i < n; ++i) {
            if (!results[i].csv.empty())
                write_text_file(spec.out_dir + "/rung" + std::to_string(i + 1) + ".csv",
                                results[i].csv);
        }
        write_text_file(spec.out_dir + "/report.csv", report.to_csv());
    }
    return report;
}

std::vector<std::pair<double, double>> default_ladder() {
    return {{1.0 / 128, 1.0 / 16}, {1.0 / 256, 1.0 / 32}, {1.0 / 512, 1.0 / 64},
            {1.0 / 1024, 1.0 / 128}};
}

// Bounds must describe the flowing water; nodes at the positivity floor are
// dry filler and would pin absA at the floor value.
FlowState wet_nodes(const FlowState& state, double A_min) {
    FlowState wet;
    for (std::size_t j = 0; j < state.A.size(); ++j) {
        if (state.A[j] > A_min) {
            wet.A.push_back(state.A[j]);
            wet.Q.push_back(state.Q[j]);
        }
    }
    if (wet.A.empty()) return state;  // all dry: degenerate (mu = 0) anyway
    return wet;
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<StabilityReport> run_stability_sweep(const SweepSpec& spec) {
    if (spec.dts.empty() || spec.dxs.empty() || spec.phis.empty() || spec.r_stars.empty())
        throw config_error("stability sweep: every axis needs at least one value");

    const FlowState wet = wet_nodes(spec.base.scenario.initial, spec.base.scenario.A_min);
    std::vector<StabilityReport> reports;
    reports.reserve(spec.dts.size() * spec.dxs.size() * spec.phis.size() * spec.r_stars.size());
    for (double dt : spec.dts)
        for (double dx : spec.dxs)
            for (double phi : spec.phis)
                for (double rs : spec.r_stars)
                    reports.push_back(
                        evaluate_stability(dt, dx, phi, rs, spec.base.scenario.geometry, wet));

    if (!spec.out_dir.empty()) write_text_file(spec.out_dir + "/sweep.csv", sweep_csv(reports));
    return reports;
}

std::string sweep_csv(const std::vector<StabilityReport>& reports) {
    std::string out =
        "dt,dx,phi,r_star,condA,slackA,condQ,slackQ,condCombined,slackCombined,"
        "empirical,slackEmpirical\n";
    for (const StabilityReport& r : reports) {
        out += format_g17(r.dt) + "," + format_g17(r.dx) + "," + format_g17(r.phi) + "," +
               format_g17(r.r_star) + ",";
        out += bool_str(r.area.satisfied) + "," + format_g17(r.area.slack) + ",";
        out += bool_str(r.discharge.satisfied) + "," + format_g17(r.discharge.slack) + ",";
        out += bool_str(r.combined.satisfied) + "," + format_g17(r.combined.slack) + ",";
        out += bool_str(r.empirical.satisfied) + "," + format_g17(r.empirical.slack) + "\n";
    }
    return out;
}

std::string run_csv(const std::vector<FlowState>& levels, const GridSpec& grid,
                    const PointEvaluator* exact) {
    std::string out = exact ? "t,x,A,Q,A_exact,Q_exact\n" : "t,x,A,Q\n";
    for (const FlowState& s : levels) {
        const double t = grid.t(s.time_level);
        for (int j = 0; j <= grid.M; ++j) {
            out += format_g17(t) + "," + format_g17(grid.x(j)) + "," + format_g17(s.A[j]) + "," +
                   format_g17(s.Q[j]);
            if (exact) {
                const auto [Ae, Qe] = (*exact)(t, grid.x(j));
                out += "," + format_g17(Ae) + "," + format_g17(Qe);
            }
            out += "\n";
        }
    }
    return out;
}

void persist_run(const std::vector<FlowState>& levels, const GridSpec& grid,
                 const std::string& path, const PointEvaluator* exact) {
    write_text_file(path, run_csv(levels, grid, exact));
}

}  // namespace swe1d
