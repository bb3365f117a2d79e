#pragma once

#include <string>

#include "swe1d/model.hpp"

namespace swe1d {

// Friction coefficient of the linearized momentum balance:
// Gamma0 = g * (n1/1.49)^2 * P^(4/3).
double gamma0(const ChannelGeometry& geom);

// State-dependent bounds entering the discrete stability conditions.
// mu     = max_j |Q_j|/A_j          (velocity scale)
// absA   = min_j A_j                (area scale)
// maxQ   = max_j |Q_j|
// Rn     = (g/T) absA / mu + mu
// Pn     = (P tau_bar / rho) / maxQ + Gamma0 mu absA^(-4/3)
// Nn     = (g / 2T) maxQ / mu
// A state at rest (mu = 0) is degenerate: the inverse terms are dropped and
// every condition evaluator reports trivially satisfied with infinite slack.
struct FlowBounds {
    double mu = 0.0;
    double absA = 0.0;
    double maxQ = 0.0;
    double Rn = 0.0;
    double Pn = 0.0;
    double Nn = 0.0;
};
FlowBounds flow_bounds(const ChannelGeometry& geom, const FlowState& state);

// One evaluated inequality: satisfied iff lhs <= rhs; slack = rhs - lhs.
struct CondResult {
    bool satisfied = true;
    double slack = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

// Shared grid-ratio envelope:
// E = dt + dt^2 + dt/dx + dt^2/dx + dt^3/dx + (dt/dx)^2.
double envelope(double dt, double dx);

// Growth-bound coefficients of the discharge amplification estimate.
// w1 needs no inverse bound terms; w2 and w3 contain 1/mu and 1/Rn and
// require mu > 0 (callers route mu = 0 through the degenerate rule).
double w1(double dt, double dx, double phi, const FlowBounds& b);
double w2(double dt, double dx, double phi, const FlowBounds& b);
double w3(double dt, double dx, double phi, const FlowBounds& b);

// Area-equation bound: (dt^3/dx^2)(1 + (2dt/3) Gamma0 mu |A|^(-4/3))
//                      <= 3 Gamma0^(-1) mu^(-3) |A|^(4/3) |phi|^(-2).
// phi = 0 is a precondition violation (domain_error).
CondResult cond_A(double dt, double dx, double phi, double gamma0, const FlowBounds& b);

// Discharge-equation bound: dt (3 Pn W1 + max(W2, W3)/dx)
//                           <= max(1 + sqrt(1 - r*), sqrt(r*)).
// r* must lie in (0, 1) (config_error otherwise).
CondResult cond_Q(double dt, double dx, double phi, double r_star, const FlowBounds& b);

// Combined sufficient bound:
// (dt^4/dx^2)(3 Pn W1 + max(W2, W3)/dx)(1 + (2dt/3) Gamma0 mu |A|^(-4/3))
//   <= 3 max(1 + sqrt(1 - r*), sqrt(r*)) Gamma0^(-1) mu^(-3) |A|^(4/3) |phi|^(-2).
CondResult cond_combined(double dt, double dx, double phi, double r_star, double gamma0,
                         const FlowBounds& b);

// Simplified closed-form timestep rule:
// (dt^4/dx^2)(3 |A|^(4/3) + 2 dt Gamma0 mu)
//   <= 9 max(1 + sqrt(1 - r*), sqrt(r*)) Gamma0^(-1) mu^(-3) |A|^(8/3) |phi|^(-2).
CondResult empirical_dt_bound(double dt, double dx, double phi, double r_star, double gamma0,
                              double mu, double absA);

// Squared modulus of the area-equation amplification factor for one Fourier
// mode phi, with flux-Jacobian moduli gamma1, gamma2 and phase alpha2:
// (1 - (2dt^2/3dx) g2 phi sin(a2))^2 + ((dt/dx) g1 + (2dt^2/3dx) g2 cos(a2))^2 phi^2.
double amp_modulus_A_squared(double dt, double dx, double phi, double gamma1_mod,
                             double gamma2_mod, double alpha2);

// Largest dt in (0, dx] satisfying cond_combined for the given state, located
// by bisection to 1e-6 relative accuracy. A state at rest returns dx.
double max_stable_dt(double dx, double phi, double r_star, const ChannelGeometry& geom,
                     const FlowState& state);

// All four conditions evaluated at one (dt, dx, phi, r*) for one state.
struct StabilityReport {
    double dt = 0.0, dx = 0.0, phi = 0.0, r_star = 0.0;
    double gamma0 = 0.0;
    FlowBounds bounds;
    CondResult area, discharge, combined, empirical;
};
StabilityReport evaluate_stability(double dt, double dx, double phi, double r_star,
                                   const ChannelGeometry& geom, const FlowState& state);
std::string to_json(const StabilityReport& report);

}  // namespace swe1d
