#pragma once

#include <utility>

#include "swe1d/model.hpp"

namespace swe1d {

// Dam-break on a horizontal channel: still water of depth h_l for x <= x0,
// dry bed for x > x0. The solution is a Ritter expansion fan carrying a
// first-order Chezy resistance correction and a constant-state wave tip.
// C = +infinity selects the frictionless (pure Ritter) limit, in which the
// corrections vanish exactly and the tip region is empty.
struct DamBreakParams {
    double h_l = 5e-3;  // upstream depth (m)
    double x0 = 0.5;    // dam position (m)
    double C = 40.0;    // Chezy coefficient (m^(1/2)/s); +inf = frictionless
    double g = 10.0;    // gravity (m/s^2)
    double L = 1.0;     // channel length (m)
    double u0_plateau = 0.1;  // initial plateau velocity (m/s)

    void validate() const;  // throws config_error
    double c0() const;      // sqrt(g*h_l)
};

// Similarity coordinate xi = 2 - (x - x0)/(t*sqrt(g*h_l)); requires t > 0.
double xi(const DamBreakParams& p, double t, double x);

// Resistance-correction shape functions; require xi > 0.
double alpha1(double xi);
double alpha2(double xi);

// Corrected fan profiles, valid for 0 < xi <= 3:
//   h_c = (1/g) * ((2/3)c0 - (x-x0)/(3t) + (g^2/C^2) alpha1 t)^2
//   u_c = (2/3)c0 + 2(x-x0)/(3t) + (g^2/C^2) alpha2 t
double corrected_depth(const DamBreakParams& p, double t, double x);
double corrected_velocity(const DamBreakParams& p, double t, double x);

// Region edges at time t > 0: x1 = upstream fan edge, x2 = start of the
// constant tip (the maximizer of u_c over [x1, x3]), x3 = front position.
// In the frictionless limit u_c is monotone, x2 = x3 and the tip is empty.
struct RegionBounds {
    double x1, x2, x3;
};
RegionBounds region_bounds(const DamBreakParams& p, double t);

// Piecewise depth/velocity at t > 0 (t = 0 reproduces the initial condition):
//   x <  x1 : plateau (h_l, u0_plateau at t = 0; u = 0 for t > 0)
//   x <  x2 : corrected fan (h_c, u_c)
//   x <  x3 : constant tip, frozen at the fan values at x2
//   x >= x3 : dry (0, 0)
double h_exact(const DamBreakParams& p, double t, double x);
double u_exact(const DamBreakParams& p, double t, double x);

// Conserved variables for a channel of top width T: A = T*h, Q = A*u.
double A_exact(const DamBreakParams& p, double T, double t, double x);
double Q_exact(const DamBreakParams& p, double T, double t, double x);

// Nodal initial state: x_j <= x0 gets (T*h_l, T*h_l*u0_plateau), the dry side
// gets the positivity floor (A_min, 0).
FlowState initial_state(const GridSpec& grid, const DamBreakParams& p, double T, double A_min);

// Point evaluator of the exact (A, Q) with a per-time cache of the region
// bounds. One instance per consumer; instances are independent.
class ExactSolution {
  public:
    ExactSolution(const DamBreakParams& p, double T);
    std::pair<double, double> operator()(double t, double x) const;

  private:
    RegionBounds bounds(double t) const;
    DamBreakParams p_;
    double T_;
    mutable double cached_t_;
    mutable RegionBounds cached_b_;
};

// Exact-solution sampler for error norms (dry means exactly A = 0).
PointEvaluator exact_evaluator(const DamBreakParams& p, double T);

// Boundary sampler for the scheme: same solution, but dry values are clipped
// to the positivity floor (A_min, 0) so ghosts match the interior flooring.
GhostSampler analytic_sampler(const DamBreakParams& p, double T, double A_min);

}  // namespace swe1d
