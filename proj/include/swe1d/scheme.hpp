#pragma once

#include <optional>
#include <vector>

#include "swe1d/model.hpp"

namespace swe1d {

// Output of the forward (predictor) half-step.
struct PredictedState {
    std::vector<double> A_bar;
    std::vector<double> Q_bar;
};

// One ghost value for a nodal array: zero-gradient copies the adjacent
// interior value, analytic mode passes the supplied sample through.
double apply_boundary(const std::vector<double>& values, Side side, BoundaryMode mode,
                      std::optional<double> analytic_value = std::nullopt);

// Positivity floor: any node with A < A_min gets (A_min, 0).
void enforce_positivity(FlowState& state, double A_min);

// Velocity ceiling: clamps |Q_j| to A_j * u_max. No-op when u_max is infinite.
void enforce_velocity_ceiling(FlowState& state, double u_max);

// Predictor: forward differences with a right ghost sampled at time t = n*dt.
// Applies the positivity floor and velocity ceiling to the predicted values.
// Throws blowup_error naming the first non-finite (time level, node).
PredictedState predictor(const FlowState& state, const Scenario& sc);

// Corrector: backward differences on the predicted values with a left ghost
// sampled at time t = (n+1)*dt, averaged with the old state. Applies the
// positivity floor and velocity ceiling. Throws blowup_error on non-finite.
FlowState corrector(const FlowState& state, const PredictedState& pred, const Scenario& sc);

// One full predictor-corrector step from level n to level n+1.
FlowState step(const FlowState& state, const Scenario& sc);

// March the scenario over its whole grid. Returns the stored time levels in
// ascending order, always including level 0 and level N; thin > 1 keeps only
// every thin-th intermediate level.
std::vector<FlowState> run(const Scenario& sc, int thin = 1);

}  // namespace swe1d
