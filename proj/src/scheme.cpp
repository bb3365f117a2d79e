#include "swe1d/scheme.hpp"

#include <cmath>
#include <string>

namespace swe1d {

namespace {

// Momentum flux through a node: (g/2T) A^2 + Q^2/A.
double momentum_flux(const ChannelGeometry& geom, double A, double Q) {
    return (geom.g / (2.0 * geom.T)) * A * A + Q * Q / A;
}

// Momentum source per unit time: shear drive minus Manning resistance,
// P*tau_bar/rho - Gamma0 * Q|Q| / A^(7/3) with Gamma0 = g (n1/1.49)^2 P^(4/3).
// Nodes at the positivity floor are dry; they get no momentum source.
double momentum_source(const ChannelGeometry& geom, double A, double Q, double A_min) {
    if (A <= A_min) return 0.0;
    const double c = geom.n1 / 1.49;
    const double gamma0 = geom.g * c * c * std::pow(geom.P, 4.0 / 3.0);
    return geom.P * geom.tau_bar / geom.rho - gamma0 * Q * std::fabs(Q) / std::pow(A, 7.0 / 3.0);
}

void check_finite(const FlowState& s, int level, const char* phase) {
    for (int j = 0; j < static_cast<int>(s.A.size()); ++j) {
        if (!std::isfinite(s.A[j]) || !std::isfinite(s.Q[j]))
            throw blowup_error(std::string(phase) + ": non-finite value at time level " +
                                   std::to_string(level) + ", node " + std::to_string(j),
                               level, j);
    }
}

std::pair<double, double> ghost_pair(const Scenario& sc, const std::vector<double>& A,
                                     const std::vector<double>& Q, Side side, double t, double x) {
    if (sc.boundary_mode == BoundaryMode::analytic_dirichlet) {
        const auto aq = sc.analytic_ghost(t, x);
        return {apply_boundary(A, side, sc.boundary_mode, aq.first),
                apply_boundary(Q, side, sc.boundary_mode, aq.second)};
    }
    return {apply_boundary(A, side, sc.boundary_mode), apply_boundary(Q, side, sc.boundary_mode)};
}

}  // namespace

double apply_boundary(const std::vector<double>& values, Side side, BoundaryMode mode,
                      std::optional<double> analytic_value) {
    if (values.empty()) throw config_error("apply_boundary: empty value array");
    if (mode == BoundaryMode::analytic_dirichlet) {
        if (!analytic_value) throw config_error("apply_boundary: analytic mode needs a sample");
        return *analytic_value;
    }
    return side == Side::left ? values.front() : values.back();
}

void enforce_positivity(FlowState& state, double A_min) {
    for (std::size_t j = 0; j < state.A.size(); ++j) {
        if (state.A[j] < A_min) {
            state.A[j] = A_min;
            state.Q[j] = 0.0;
        }
    }
}

void enforce_velocity_ceiling(FlowState& state, double u_max) {
    if (!std::isfinite(u_max)) return;
    for (std::size_t j = 0; j < state.A.size(); ++j) {
        const double cap = state.A[j] * u_max;
        if (state.Q[j] > cap) state.Q[j] = cap;
        else if (state.Q[j] < -cap) state.Q[j] = -cap;
    }
}

PredictedState predictor(const FlowState& state, const Scenario& sc) {
    const GridSpec& gr = sc.grid;
    const ChannelGeometry& geom = sc.geometry;
    const int M = gr.M;
    const double lam = gr.lambda();
    const double t = gr.t(state.time_level);

    // Right ghost at x = (M+1)*dx, old time level.
    const auto [A_g, Q_g] = ghost_pair(sc, state.A, state.Q, Side::right, t, (M + 1) * gr.dx);

    PredictedState p;
    p.A_bar.resize(M + 1);
    p.Q_bar.resize(M + 1);
    for (int j = 0; j <= M; ++j) {
        const double A_j = state.A[j];
        const double Q_j = state.Q[j];
        const double A_r = (j < M) ? state.A[j + 1] : A_g;
        const double Q_r = (j < M) ? state.Q[j + 1] : Q_g;

        p.A_bar[j] = A_j - lam * (Q_r - Q_j) + gr.dt * rainfall_at(sc.rainfall, t, gr.x(j));
        p.Q_bar[j] = Q_j - lam * (momentum_flux(geom, A_r, Q_r) - momentum_flux(geom, A_j, Q_j)) +
                     gr.dt * momentum_source(geom, A_j, Q_j, sc.A_min);
    }

    FlowState tmp{std::move(p.A_bar), std::move(p.Q_bar), state.time_level + 1};
    check_finite(tmp, state.time_level + 1, "predictor");
    enforce_positivity(tmp, sc.A_min);
    enforce_velocity_ceiling(tmp, sc.u_max);
    p.A_bar = std::move(tmp.A);
    p.Q_bar = std::move(tmp.Q);
    return p;
}

FlowState corrector(const FlowState& state, const PredictedState& pred, const Scenario& sc) {
    const GridSpec& gr = sc.grid;
    const ChannelGeometry& geom = sc.geometry;
    const int M = gr.M;
    const double lam = gr.lambda();
    const double t_next = gr.t(state.time_level + 1);

    // Left ghost at x = -dx, new time level, taken from the predicted values.
    const auto [A_g, Q_g] = ghost_pair(sc, pred.A_bar, pred.Q_bar, Side::left, t_next, -gr.dx);

    FlowState next;
    next.A.resize(M + 1);
    next.Q.resize(M + 1);
    next.time_level = state.time_level + 1;
    for (int j = 0; j <= M; ++j) {
        const double Ab_j = pred.A_bar[j];
        const double Qb_j = pred.Q_bar[j];
        const double Ab_l = (j > 0) ? pred.A_bar[j - 1] : A_g;
        const double Qb_l = (j > 0) ? pred.Q_bar[j - 1] : Q_g;

        next.A[j] = 0.5 * (state.A[j] + Ab_j - lam * (Qb_j - Qb_l) +
                           gr.dt * rainfall_at(sc.rainfall, t_next, gr.x(j)));
        next.Q[j] =
            0.5 * (state.Q[j] + Qb_j -
                   lam * (momentum_flux(geom, Ab_j, Qb_j) - momentum_flux(geom, Ab_l, Qb_l)) +
                   gr.dt * momentum_source(geom, Ab_j, Qb_j, sc.A_min));
    }

    check_finite(next, next.time_level, "corrector");
    enforce_positivity(next, sc.A_min);
    enforce_velocity_ceiling(next, sc.u_max);
    return next;
}

FlowState step(const FlowState& state, const Scenario& sc) {
    return corrector(state, predictor(state, sc), sc);
}

std::vector<FlowState> run(const Scenario& sc, int thin) {
    sc.validate();
    if (thin < 1) throw config_error("run: thin must be >= 1");

    std::vector<FlowState> out;
    FlowState cur = sc.initial;
    cur.time_level = 0;
    out.push_back(cur);
    for (int n = 0; n < sc.grid.N; ++n) {
        cur = step(cur, sc);
        if ((cur.time_level % thin) == 0 || cur.time_level == sc.grid.N) out.push_back(cur);
    }
    return out;
}

}  // namespace swe1d
