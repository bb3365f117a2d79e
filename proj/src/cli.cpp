#include "swe1d/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "swe1d/csv.hpp"
#include "swe1d/harness.hpp"
#include "swe1d/plot.hpp"
#include "swe1d/scheme.hpp"

namespace swe1d {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kDefaultPhi = std::numbers::pi / 16.0;

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::string preset_name;
    std::string boundary;     // "", "ghost", "analytic"
    std::string input_path;   // plot
    std::string levels_arg;   // plot
    double dt = kNaN, dx = kNaN, phi = kNaN, rstar = kNaN, amin = kNaN;
    int jobs = 1, thin = 1;
    bool oracle = false;
    bool oracle_vs_oracle = false;
};

struct Resolved {
    NamedScenario ns;
    double phi = kDefaultPhi;
    double r_star = 0.5;
    std::vector<double> dts, dxs, phis, r_stars;  // sweep axes
    bool sweep = false;
    std::vector<std::pair<double, double>> ladder;
    bool with_oracle = true;
};

double require_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw config_error("config: " + where + " must be a number");
    return j.get<double>();
}

// Overwrites *dst if the key is present.
void take(const json& sec, const char* key, double* dst, const std::string& where) {
    if (sec.contains(key)) *dst = require_number(sec.at(key), where + "." + key);
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw config_error("config: " + where + " must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(require_number(v, where + " entry"));
    return out;
}

enum class IcKind { none, preset_builder, dam_break, uniform, arrays };

Resolved resolve(const Options& opt) {
    json cfg;
    if (!opt.config_path.empty()) {
        try {
            cfg = json::parse(read_text_file(opt.config_path));
        } catch (const config_error&) {
            throw;
        } catch (const std::exception& e) {
            throw config_error(std::string("config: JSON parse failed: ") + e.what());
        }
        if (!cfg.is_object()) throw config_error("config: top level must be a JSON object");
    }

    std::string preset_name = opt.preset_name;
    if (preset_name.empty() && cfg.contains("preset")) {
        if (!cfg["preset"].is_string()) throw config_error("config: preset must be a string");
        preset_name = cfg["preset"].get<std::string>();
    }

    Resolved r;
    IcKind ic = IcKind::none;
    if (!preset_name.empty()) {
        r.ns = preset(preset_name);
        ic = (r.ns.name == "dressler-dambreak") ? IcKind::dam_break : IcKind::preset_builder;
    } else if (!cfg.is_null()) {
        r.ns.name = "config";
        r.ns.scenario.grid = GridSpec::make(1.0, 1.0, 1.0 / 16, 1.0 / 128);
        r.ns.scenario.rainfall.lateral_scale = kNaN;
    } else {
        throw config_error("nothing to run: provide --preset or --config");
    }
    Scenario& sc = r.ns.scenario;

    // Geometry.
    if (cfg.contains("geometry")) {
        const json& gsec = cfg["geometry"];
        take(gsec, "T", &sc.geometry.T, "geometry");
        take(gsec, "P", &sc.geometry.P, "geometry");
        take(gsec, "n1", &sc.geometry.n1, "geometry");
        take(gsec, "tau_bar", &sc.geometry.tau_bar, "geometry");
        take(gsec, "rho", &sc.geometry.rho, "geometry");
        take(gsec, "g", &sc.geometry.g, "geometry");
    }

    // Grid (rebuilt at the end once CLI overrides are in).
    double L = sc.grid.L, T1 = sc.grid.T1, dx = sc.grid.dx, dt = sc.grid.dt;
    if (cfg.contains("grid")) {
        const json& gsec = cfg["grid"];
        take(gsec, "L", &L, "grid");
        take(gsec, "T1", &T1, "grid");
        take(gsec, "dx", &dx, "grid");
        take(gsec, "dt", &dt, "grid");
    }
    if (!std::isnan(opt.dt)) dt = opt.dt;
    if (!std::isnan(opt.dx)) dx = opt.dx;

    // Rainfall.
    if (cfg.contains("rainfall")) {
        const json& rsec = cfg["rainfall"];
        take(rsec, "I", &sc.rainfall.I, "rainfall");
        take(rsec, "t0", &sc.rainfall.t0, "rainfall");
        take(rsec, "t1", &sc.rainfall.t1, "rainfall");
        take(rsec, "x_lo", &sc.rainfall.x_lo, "rainfall");
        take(rsec, "x_hi", &sc.rainfall.x_hi, "rainfall");
        take(rsec, "lateral_scale", &sc.rainfall.lateral_scale, "rainfall");
    }

    // Dam-break parameters.
    if (cfg.contains("dam_break")) {
        DamBreakParams p = r.ns.dam_break.value_or(DamBreakParams{});
        if (!r.ns.dam_break) {
            p.g = sc.geometry.g;
            p.L = L;
        }
        const json& dsec = cfg["dam_break"];
        take(dsec, "h_l", &p.h_l, "dam_break");
        take(dsec, "x0", &p.x0, "dam_break");
        take(dsec, "C", &p.C, "dam_break");
        take(dsec, "g", &p.g, "dam_break");
        take(dsec, "L", &p.L, "dam_break");
        take(dsec, "u0_plateau", &p.u0_plateau, "dam_break");
        p.validate();
        r.ns.dam_break = p;
        if (ic == IcKind::none) ic = IcKind::dam_break;
    }

    // Floors and caps.
    if (cfg.contains("A_min")) sc.A_min = require_number(cfg["A_min"], "A_min");
    if (!std::isnan(opt.amin)) sc.A_min = opt.amin;
    if (cfg.contains("u_max")) {
        const double cap = require_number(cfg["u_max"], "u_max");
        sc.u_max = (cap > 0.0) ? cap : kInf;  // nonpositive disables the ceiling
    }

    // Initial state.
    std::vector<double> icA, icQ;
    double uniA = kNaN, uniQ = 0.0;
    if (cfg.contains("initial")) {
        const json& isec = cfg["initial"];
        if (isec.is_string()) {
            if (isec.get<std::string>() != "dambreak")
                throw config_error("config: initial string must be \"dambreak\"");
            ic = IcKind::dam_break;
        } else if (isec.is_object() && isec.contains("uniform")) {
            uniA = require_number(isec["uniform"].at("A"), "initial.uniform.A");
            if (isec["uniform"].contains("Q"))
                uniQ = require_number(isec["uniform"]["Q"], "initial.uniform.Q");
            ic = IcKind::uniform;
        } else if (isec.is_object() && isec.contains("A") && isec.contains("Q")) {
            icA = number_list(isec["A"], "initial.A");
            icQ = number_list(isec["Q"], "initial.Q");
            ic = IcKind::arrays;
        } else {
            throw config_error(
                "config: initial must be \"dambreak\", {\"uniform\": {...}}, or {\"A\": [...], "
                "\"Q\": [...]}");
        }
    }

    // Boundary mode.
    std::string boundary = opt.boundary;
    if (boundary.empty() && cfg.contains("boundary")) {
        if (!cfg["boundary"].is_string())
            throw config_error("config: boundary must be \"ghost\" or \"analytic\"");
        boundary = cfg["boundary"].get<std::string>();
    }
    if (!boundary.empty()) {
        if (boundary == "ghost") sc.boundary_mode = BoundaryMode::zero_gradient_ghost;
        else if (boundary == "analytic") sc.boundary_mode = BoundaryMode::analytic_dirichlet;
        else throw config_error("config: boundary must be \"ghost\" or \"analytic\"");
    }

    // Stability parameters and sweep axes.
    if (cfg.contains("stability")) {
        const json& ssec = cfg["stability"];
        take(ssec, "phi", &r.phi, "stability");
        take(ssec, "r_star", &r.r_star, "stability");
        if (ssec.contains("dts")) r.dts = number_list(ssec["dts"], "stability.dts");
        if (ssec.contains("dxs")) r.dxs = number_list(ssec["dxs"], "stability.dxs");
        if (ssec.contains("phis")) r.phis = number_list(ssec["phis"], "stability.phis");
        if (ssec.contains("r_stars"))
            r.r_stars = number_list(ssec["r_stars"], "stability.r_stars");
    }
    if (!std::isnan(opt.phi)) r.phi = opt.phi;
    if (!std::isnan(opt.rstar)) r.r_star = opt.rstar;
    if (r.phi == 0.0 || !std::isfinite(r.phi))
        throw config_error("phi must be finite and nonzero");
    r.sweep = !r.dts.empty() && !r.dxs.empty();
    if (r.sweep) {
        if (r.phis.empty())
            r.phis = {std::numbers::pi / 64, std::numbers::pi / 32, std::numbers::pi / 16,
                      std::numbers::pi / 8};
        if (r.r_stars.empty()) r.r_stars = {0.5};
    }

    // Study ladder.
    r.ladder = default_ladder();
    if (cfg.contains("study")) {
        const json& ssec = cfg["study"];
        if (ssec.contains("ladder")) {
            if (!ssec["ladder"].is_array() || ssec["ladder"].empty())
                throw config_error("config: study.ladder must be a nonempty array of [dt, dx]");
            r.ladder.clear();
            for (const auto& pair : ssec["ladder"]) {
                if (!pair.is_array() || pair.size() != 2)
                    throw config_error("config: each study.ladder entry must be [dt, dx]");
                r.ladder.emplace_back(require_number(pair[0], "study.ladder dt"),
                                      require_number(pair[1], "study.ladder dx"));
            }
        }
        if (ssec.contains("oracle")) {
            if (!ssec["oracle"].is_boolean())
                throw config_error("config: study.oracle must be a boolean");
            r.with_oracle = ssec["oracle"].get<bool>();
        }
    }

    // Final grid and initial state.
    sc.grid = GridSpec::make(L, T1, dx, dt);
    const double T = sc.geometry.T;
    const double A_min = sc.A_min;
    switch (ic) {
        case IcKind::dam_break: {
            if (!r.ns.dam_break)
                throw config_error("config: initial \"dambreak\" needs dam_break parameters");
            const DamBreakParams p = *r.ns.dam_break;
            r.ns.initial_builder = [p, T, A_min](const GridSpec& gr) {
                return initial_state(gr, p, T, A_min);
            };
            break;
        }
        case IcKind::uniform: {
            if (!(uniA > 0.0)) throw config_error("config: initial.uniform.A must be positive");
            r.ns.initial_builder = [uniA, uniQ](const GridSpec& gr) {
                FlowState s;
                s.A.assign(gr.M + 1, uniA);
                s.Q.assign(gr.M + 1, uniQ);
                return s;
            };
            break;
        }
        case IcKind::arrays: {
            r.ns.initial_builder = [icA, icQ](const GridSpec& gr) {
                if (static_cast<int>(icA.size()) != gr.M + 1 ||
                    static_cast<int>(icQ.size()) != gr.M + 1)
                    throw config_error("config: initial arrays must have exactly M+1 entries");
                return FlowState{icA, icQ, 0};
            };
            break;
        }
        case IcKind::preset_builder:
            break;  // keep the preset's builder
        case IcKind::none:
            throw config_error("config: no initial state (give initial or a preset)");
    }
    sc.initial = r.ns.initial_builder(sc.grid);

    if (std::isnan(sc.rainfall.lateral_scale)) sc.rainfall.lateral_scale = sc.geometry.T;

    if (sc.boundary_mode == BoundaryMode::analytic_dirichlet) {
        if (!r.ns.dam_break)
            throw config_error("analytic boundary mode needs dam-break parameters");
        sc.analytic_ghost = analytic_sampler(*r.ns.dam_break, sc.geometry.T, sc.A_min);
    } else {
        sc.analytic_ghost = nullptr;
    }

    sc.validate();
    return r;
}

int cmd_simulate(const Options& opt) {
    const Resolved r = resolve(opt);
    const std::vector<FlowState> levels = run(r.ns.scenario, opt.thin);

    PointEvaluator ev;
    const PointEvaluator* evp = nullptr;
    if (opt.oracle) {
        if (!r.ns.dam_break)
            throw config_error("simulate --oracle needs a dam-break scenario");
        ev = exact_evaluator(*r.ns.dam_break, r.ns.scenario.geometry.T);
        evp = &ev;
    }

    const std::string path = opt.out_dir + "/run.csv";
    persist_run(levels, r.ns.scenario.grid, path, evp);
    const std::size_t rows = levels.size() * (r.ns.scenario.grid.M + 1);
    std::cout << "simulate: " << r.ns.scenario.grid.N << " steps, " << levels.size()
              << " stored levels, " << rows << " data rows -> " << path << "\n";
    return 0;
}

int cmd_converge(const Options& opt) {
    const Resolved r = resolve(opt);
    StudySpec spec;
    spec.base = r.ns;
    spec.ladder = r.ladder;
    spec.with_oracle = r.with_oracle;
    spec.out_dir = opt.out_dir;
    spec.jobs = opt.jobs;
    const ConvergenceReport report = run_convergence_study(spec);

    char line[160];
    std::snprintf(line, sizeof(line), "%-14s %-14s %-12s %-12s %-9s %-9s", "dt", "dx", "errA",
                  "errQ", "ratioA", "ratioQ");
    std::cout << line << "\n";
    for (const ConvergenceRow& row : report.rows) {
        char ra[32] = "--", rq[32] = "--";
        if (row.has_ratioA) std::snprintf(ra, sizeof(ra), "%.4f", row.ratioA);
        if (row.has_ratioQ) std::snprintf(rq, sizeof(rq), "%.4f", row.ratioQ);
        std::snprintf(line, sizeof(line), "%-14.8g %-14.8g %-12.6g %-12.6g %-9s %-9s", row.dt,
                      row.dx, row.errA, row.errQ, ra, rq);
        std::cout << line << "\n";
    }
    std::cout << "report: " << opt.out_dir << "/report.csv\n";
    return 0;
}

int cmd_stability(const Options& opt) {
    const Resolved r = resolve(opt);
    const Scenario& sc = r.ns.scenario;
    if (std::fabs(r.phi) > std::numbers::pi / 4)
        std::cerr << "warning: phi=" << r.phi
                  << " is outside the small-angle range the conditions assume\n";

    if (r.sweep) {
        SweepSpec spec;
        spec.base = r.ns;
        spec.dts = r.dts;
        spec.dxs = r.dxs;
        spec.phis = r.phis;
        spec.r_stars = r.r_stars;
        spec.out_dir = opt.out_dir;
        const auto reports = run_stability_sweep(spec);
        std::size_t all_ok = 0;
        for (const StabilityReport& rep : reports)
            if (rep.area.satisfied && rep.discharge.satisfied && rep.combined.satisfied &&
                rep.empirical.satisfied)
                ++all_ok;
        std::cout << "stability sweep: " << reports.size() << " rows, " << all_ok
                  << " satisfy every condition -> " << opt.out_dir << "/sweep.csv\n";
        return 0;
    }

    const FlowState wet = wet_nodes(sc.initial, sc.A_min);
    const StabilityReport rep =
        evaluate_stability(sc.grid.dt, sc.grid.dx, r.phi, r.r_star, sc.geometry, wet);
    const std::string path = opt.out_dir + "/stability.json";
    write_text_file(path, to_json(rep));

    auto show = [](const char* name, const CondResult& c) {
        std::cout << name << ": " << (c.satisfied ? "satisfied" : "violated")
                  << " (slack=" << format_g17(c.slack) << ")\n";
    };
    std::cout << "dt=" << format_g17(rep.dt) << " dx=" << format_g17(rep.dx)
              << " phi=" << format_g17(rep.phi) << " r_star=" << format_g17(rep.r_star)
              << " mu=" << format_g17(rep.bounds.mu) << " absA=" << format_g17(rep.bounds.absA)
              << "\n";
    show("cond_A", rep.area);
    show("cond_Q", rep.discharge);
    show("cond_combined", rep.combined);
    show("empirical_dt_bound", rep.empirical);
    std::cout << "max_stable_dt(dx=" << format_g17(sc.grid.dx)
              << "): " << format_g17(max_stable_dt(sc.grid.dx, r.phi, r.r_star, sc.geometry, wet))
              << "\n";
    std::cout << "report: " << path << "\n";
    return 0;
}

int cmd_validate(const Options& opt) {
    const Resolved r = resolve(opt);
    const ValidationCase vc = validation_case(r.ns, r.ns.scenario.grid.dt, r.ns.scenario.grid.dx);
    const GridSpec& grid = vc.scenario.grid;

    ErrorPair e;
    if (opt.oracle_vs_oracle) {
        std::vector<FlowState> levels(grid.N + 1);
        for (int n = 0; n <= grid.N; ++n) {
            levels[n].time_level = n;
            levels[n].A.resize(grid.M + 1);
            levels[n].Q.resize(grid.M + 1);
            for (int j = 0; j <= grid.M; ++j) {
                const auto [Ae, Qe] = vc.exact(grid.t(n), grid.x(j));
                levels[n].A[j] = Ae;
                levels[n].Q[j] = Qe;
            }
        }
        e = error_norms(levels, vc.exact, grid);
    } else {
        const std::vector<FlowState> levels = run(vc.scenario, 1);
        e = error_norms(levels, vc.exact, grid);
        persist_run(levels, grid, opt.out_dir + "/validate.csv", &vc.exact);
    }
    std::cout << "errA=" << format_g17(e.errA) << " errQ=" << format_g17(e.errQ) << "\n";
    return 0;
}

int cmd_plot(const Options& opt) {
    const std::vector<ProfileSeries> series = parse_run_csv(read_text_file(opt.input_path));

    std::vector<std::size_t> indices;
    if (opt.levels_arg.empty()) {
        indices.push_back(series.size() - 1);
    } else {
        for (const std::string& tok : split_csv_line(opt.levels_arg)) {
            std::size_t pos = 0;
            long v = -1;
            try {
                v = std::stol(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || v < 0 || v >= static_cast<long>(series.size()))
                throw config_error("plot: bad level index \"" + tok + "\" (run has " +
                                   std::to_string(series.size()) + " stored levels)");
            indices.push_back(static_cast<std::size_t>(v));
        }
    }

    for (std::size_t i : indices)
        write_text_file(opt.out_dir + "/profile_n" + std::to_string(i) + ".svg",
                        profile_svg(series[i]));
    std::cout << "plot: wrote " << indices.size() << " file(s) to " << opt.out_dir << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    Options opt;
    CLI::App app{"One-dimensional open-channel shallow-water solver"};
    app.name("swe");
    app.require_subcommand(1);

    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON scenario file");
        sub->add_option("--out", opt.out_dir, "output directory (default: out)");
        sub->add_option("--preset", opt.preset_name,
                        "built-in scenario: dressler-dambreak | garoua-flume | uniform-steady");
        sub->add_option("--dt", opt.dt, "time step override (s)");
        sub->add_option("--dx", opt.dx, "space step override (m)");
        sub->add_option("--phi", opt.phi, "Fourier phase angle (rad, default pi/16)");
        sub->add_option("--rstar", opt.rstar, "decay split parameter in (0,1), default 0.5");
        sub->add_option("--boundary", opt.boundary, "boundary mode: ghost | analytic")
            ->check(CLI::IsMember({"ghost", "analytic"}));
        sub->add_option("--amin", opt.amin, "positivity floor on A (m^2)");
        sub->add_option("--jobs", opt.jobs, "parallel workers for study rungs")
            ->check(CLI::PositiveNumber);
        sub->add_option("--thin", opt.thin, "store every k-th time level")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one scenario, write the time series CSV");
    add_common(sim);
    sim->add_flag("--oracle", opt.oracle, "add exact-solution columns (dam-break scenarios)");

    CLI::App* conv =
        app.add_subcommand("converge", "grid-refinement study with error norms and ratios");
    add_common(conv);

    CLI::App* stab =
        app.add_subcommand("stability", "evaluate the discrete stability conditions");
    add_common(stab);

    CLI::App* val =
        app.add_subcommand("validate", "error norms of one run against the exact solution");
    add_common(val);
    val->add_flag("--oracle-vs-oracle", opt.oracle_vs_oracle,
                  "compare the exact solution against itself (errors are exactly zero)");

    CLI::App* plt = app.add_subcommand("plot", "render SVG profiles from a run CSV");
    plt->add_option("--input", opt.input_path, "run CSV to plot")->required();
    plt->add_option("--levels", opt.levels_arg,
                    "comma-separated stored-level indices (default: last)");
    plt->add_option("--out", opt.out_dir, "output directory (default: out)");

    std::vector<std::string> argv_s;
    argv_s.push_back("swe");
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_s.size());
    for (std::string& s : argv_s) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(opt);
        if (conv->parsed()) return cmd_converge(opt);
        if (stab->parsed()) return cmd_stability(opt);
        if (val->parsed()) return cmd_validate(opt);
        if (plt->parsed()) return cmd_plot(opt);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const blowup_error& e) {
        std::cerr << "blowup: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace swe1d
