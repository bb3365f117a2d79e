#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "swe1d/errors.hpp"

namespace swe1d {

// Wide rectangular channel with constant top width and wetted perimeter.
struct ChannelGeometry {
    double T = 348.0;        // top width (m)
    double P = 366.4;        // wetted perimeter (m)
    double n1 = 0.025;       // Manning roughness (s m^(-1/3))
    double tau_bar = 1.329;  // mean bed shear stress (N/m^2)
    double rho = 1000.0;     // water density (kg/m^3)
    double g = 10.0;         // gravity (m/s^2)

    void validate() const;  // throws config_error on non-positive T, P, n1, rho, g
};

// Uniform space-time grid: nodes x_j = j*dx for j = 0..M, levels t^n = n*dt
// for n = 0..N. M*dx must reproduce L and N*dt must reproduce T1.
struct GridSpec {
    double L = 1.0;   // channel length (m)
    double T1 = 1.0;  // time horizon (s)
    double dx = 0.0625;
    double dt = 0.0078125;
    int M = 16;
    int N = 128;

    static GridSpec make(double L, double T1, double dx, double dt);

    double x(int j) const { return j * dx; }
    double t(int n) const { return n * dt; }
    double lambda() const { return dt / dx; }
};

// Nodal unknowns at one time level.
struct FlowState {
    std::vector<double> A;  // wetted areas (m^2)
    std::vector<double> Q;  // discharges (m^3/s)
    int time_level = 0;
};

// Space-time box of uniform rainfall. Outside the box the rate is exactly 0.
struct RainfallSpec {
    double I = 0.0;   // rainfall intensity (m/s)
    double t0 = 0.0;  // active window in time [t0, t1] (s)
    double t1 = 0.0;
    double x_lo = 0.0;  // active window in space [x_lo, x_hi] (m)
    double x_hi = 0.0;
    // Width multiplying I to get lateral inflow per unit length (m^2/s per m).
    // NaN means "use the channel top width"; scenario builders resolve it.
    double lateral_scale = std::numeric_limits<double>::quiet_NaN();
};

enum class BoundaryMode { zero_gradient_ghost, analytic_dirichlet };
enum class Side { left, right };

// Supplies (A, Q) at an off-grid space-time point for analytic boundaries.
using PointEvaluator = std::function<std::pair<double, double>(double t, double x)>;
using GhostSampler = PointEvaluator;

// Everything a single run needs.
struct Scenario {
    ChannelGeometry geometry;
    GridSpec grid;
    RainfallSpec rainfall;
    FlowState initial;
    BoundaryMode boundary_mode = BoundaryMode::zero_gradient_ghost;
    double A_min = 1e-8;  // positivity floor on A
    // Velocity ceiling |Q| <= A*u_max enforced together with positivity.
    // Infinity disables it. Wet/dry-front scenarios set it to the analytical
    // supremum velocity 2*sqrt(g*h_l) to suppress grid-speed parasites at the
    // front; the bound is never active on a resolved solution.
    double u_max = std::numeric_limits<double>::infinity();
    GhostSampler analytic_ghost;  // required for analytic_dirichlet

    void validate() const;  // throws config_error
};

// Bed slope S0 that balances the mean shear stress: S0 = tau_bar*P/(rho*g*A).
double bed_slope(const ChannelGeometry& geom, double A);

// Manning conveyance K = (1.49/n1) * A * (A/P)^(2/3).
double conveyance(const ChannelGeometry& geom, double A);

// Friction slope Sf = (n1/1.49)^2 * Q|Q| * P^(4/3) / A^(10/3) = Q|Q|/K^2.
double friction_slope(const ChannelGeometry& geom, double A, double Q);

// Lateral inflow per unit length at (t, x): I*lateral_scale inside the
// window (boundaries inclusive), exactly 0 outside.
double rainfall_at(const RainfallSpec& rain, double t, double x);

}  // namespace swe1d
