#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swe1d/dambreak.hpp"
#include "swe1d/metrics.hpp"
#include "swe1d/model.hpp"
#include "swe1d/stability.hpp"

namespace swe1d {

// A runnable scenario together with the context needed to rebuild it on a
// different grid: its analytical parameters (when it is a dam break) and a
// generator for its initial state.
struct NamedScenario {
    std::string name;
    Scenario scenario;
    std::optional<DamBreakParams> dam_break;
    std::function<FlowState(const GridSpec&)> initial_builder;
};

// Built-in scenarios:
//   "dressler-dambreak"  resistance-corrected dam break with rainfall
//   "garoua-flume"       sloped flume filling from rainfall, initially dry
//   "uniform-steady"     still water on a flat frictionless channel
// Unknown names raise config_error.
NamedScenario preset(const std::string& name);

// The same scenario on a different grid and boundary mode; the initial state
// is regenerated for the new node count. Analytic boundaries need dam-break
// parameters.
Scenario scenario_on_grid(const NamedScenario& base, double dt, double dx, BoundaryMode mode);

// Validation protocol for convergence measurement: the flat, frictionless,
// zero-plateau-velocity variant of a dam-break scenario, with analytic
// boundary ghosts from the frictionless solution, rainfall kept, and the dam
// node seeded at half height (the cell-average value, which suppresses the
// standing expansion discontinuity a nodal jump otherwise leaves behind).
struct ValidationCase {
    Scenario scenario;
    PointEvaluator exact;  // frictionless solution, dry side exactly 0
    DamBreakParams params;
};
ValidationCase validation_case(const NamedScenario& base, double dt, double dx);

// Grid-refinement study over the given (dt, dx) ladder, coarsest first.
struct StudySpec {
    NamedScenario base;
    std::vector<std::pair<double, double>> ladder;
    bool with_oracle = true;    // exact columns in the per-rung CSVs
    std::string out_dir;        // empty = no files
    int jobs = 1;               // rung parallelism; output is order-independent
};

// Runs every rung of the validation protocol, computes the space-time error
// norms against the frictionless solution, and writes rung<i>.csv time series
// plus report.csv. A rung that blows up is marked failed (NaN errors) and the
// remaining rungs still run.
ConvergenceReport run_convergence_study(const StudySpec& spec);

// Standard four-rung refinement ladder, coarsest first: both steps halve per
// rung, starting from (dt, dx) = (2^-7, 2^-4).
std::vector<std::pair<double, double>> default_ladder();

// Nodes carrying actual water (A > A_min); returns the input unchanged when
// every node sits at the floor.
FlowState wet_nodes(const FlowState& state, double A_min);

// Cartesian stability sweep over (dt, dx, phi, r*). The flow bounds are
// extracted once from the wet nodes (A > A_min) of the base initial state;
// dry filler nodes would otherwise pin absA at the positivity floor.
struct SweepSpec {
    NamedScenario base;
    std::vector<double> dts, dxs, phis, r_stars;
    std::string out_dir;  // empty = no files
};
std::vector<StabilityReport> run_stability_sweep(const SweepSpec& spec);

// CSV rendering of sweep results, one row per tuple, header
// dt,dx,phi,r_star,condA,slackA,condQ,slackQ,condCombined,slackCombined,
// empirical,slackEmpirical.
std::string sweep_csv(const std::vector<StabilityReport>& reports);

// Time-series CSV of a run: header t,x,A,Q (plus A_exact,Q_exact when an
// evaluator is given), one row per stored (level, node), 17 significant
// digits, '\n' endings.
std::string run_csv(const std::vector<FlowState>& levels, const GridSpec& grid,
                    const PointEvaluator* exact = nullptr);
void persist_run(const std::vector<FlowState>& levels, const GridSpec& grid,
                 const std::string& path, const PointEvaluator* exact = nullptr);

}  // namespace swe1d
