#include "swe1d/model.hpp"

#include <cmath>
#include <string>

namespace swe1d {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw config_error(what);
}

void check_area(double A, const char* op) {
    if (!std::isfinite(A) || A <= 0.0)
        throw std::domain_error(std::string(op) + ": wetted area must be finite and positive, got " +
                                std::to_string(A));
}

}  // namespace

void ChannelGeometry::validate() const {
    require(std::isfinite(T) && T > 0.0, "geometry: top width T must be positive");
    require(std::isfinite(P) && P > 0.0, "geometry: wetted perimeter P must be positive");
    require(std::isfinite(n1) && n1 > 0.0, "geometry: Manning roughness n1 must be positive");
    require(std::isfinite(tau_bar) && tau_bar >= 0.0, "geometry: shear stress tau_bar must be nonnegative");
    require(std::isfinite(rho) && rho > 0.0, "geometry: density rho must be positive");
    require(std::isfinite(g) && g > 0.0, "geometry: gravity g must be positive");
}

GridSpec GridSpec::make(double L, double T1, double dx, double dt) {
    require(std::isfinite(L) && L > 0.0, "grid: length L must be positive");
    require(std::isfinite(T1) && T1 >= 0.0, "grid: horizon T1 must be nonnegative");
    require(std::isfinite(dx) && dx > 0.0, "grid: dx must be positive");
    require(std::isfinite(dt) && dt > 0.0, "grid: dt must be positive");

    GridSpec s;
    s.L = L;
    s.T1 = T1;
    s.dx = dx;
    s.dt = dt;
    s.M = static_cast<int>(std::llround(L / dx));
    s.N = static_cast<int>(std::llround(T1 / dt));
    require(s.M >= 1 && std::fabs(s.M * dx - L) <= 1e-9 * L,
            "grid: dx does not divide the channel length L");
    require(s.N >= 0 && std::fabs(s.N * dt - T1) <= 1e-9 * std::max(T1, dt),
            "grid: dt does not divide the time horizon T1");
    return s;
}

void Scenario::validate() const {
    geometry.validate();
    require(std::isfinite(A_min) && A_min > 0.0, "scenario: A_min must be positive");
    require(u_max > 0.0, "scenario: u_max must be positive");
    require(static_cast<int>(initial.A.size()) == grid.M + 1 &&
                static_cast<int>(initial.Q.size()) == grid.M + 1,
            "scenario: initial state must have M+1 nodes");
    require(std::isfinite(rainfall.lateral_scale) && rainfall.lateral_scale >= 0.0,
            "scenario: rainfall lateral_scale is unresolved");
    if (boundary_mode == BoundaryMode::analytic_dirichlet)
        require(static_cast<bool>(analytic_ghost),
                "scenario: analytic boundary mode needs a ghost sampler");
}

double bed_slope(const ChannelGeometry& geom, double A) {
    check_area(A, "bed_slope");
    return geom.tau_bar * geom.P / (geom.rho * geom.g * A);
}

double conveyance(const ChannelGeometry& geom, double A) {
    check_area(A, "conveyance");
    return (1.49 / geom.n1) * A * std::pow(A / geom.P, 2.0 / 3.0);
}

double friction_slope(const ChannelGeometry& geom, double A, double Q) {
    check_area(A, "friction_slope");
    const double c = geom.n1 / 1.49;
    return c * c * Q * std::fabs(Q) * std::pow(geom.P, 4.0 / 3.0) / std::pow(A, 10.0 / 3.0);
}

double rainfall_at(const RainfallSpec& rain, double t, double x) {
    if (rain.I == 0.0) return 0.0;
    if (t < rain.t0 || t > rain.t1) return 0.0;
    if (x < rain.x_lo || x > rain.x_hi) return 0.0;
    return rain.I * rain.lateral_scale;
}

}  // namespace swe1d
