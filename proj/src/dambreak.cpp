#include "swe1d/dambreak.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace swe1d {

namespace {

constexpr int kScanPoints = 4000;      // dense bracketing scan of the fan
constexpr double kGoldenTol = 1e-12;   // absolute tolerance on the maximizer

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > kGoldenTol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

void DamBreakParams::validate() const {
    if (!(std::isfinite(h_l) && h_l > 0.0)) throw config_error("dam break: h_l must be positive");
    if (!(std::isfinite(g) && g > 0.0)) throw config_error("dam break: g must be positive");
    if (!(std::isfinite(L) && L > 0.0)) throw config_error("dam break: L must be positive");
    if (!(std::isfinite(x0) && x0 > 0.0 && x0 < L))
        throw config_error("dam break: x0 must lie strictly inside (0, L)");
    if (!(C > 0.0)) throw config_error("dam break: Chezy C must be positive");
    if (!std::isfinite(u0_plateau)) throw config_error("dam break: u0_plateau must be finite");
}

double DamBreakParams::c0() const { return std::sqrt(g * h_l); }

double xi(const DamBreakParams& p, double t, double x) {
    if (!(t > 0.0)) throw std::domain_error("xi: requires t > 0");
    return 2.0 - (x - p.x0) / (t * p.c0());
}

double alpha1(double xi) {
    if (!(xi > 0.0)) throw std::domain_error("alpha1: requires xi > 0");
    return 6.0 / (5.0 * xi) - 2.0 / 3.0 + (4.0 * std::sqrt(3.0) / 135.0) * std::pow(xi, 1.5);
}

double alpha2(double xi) {
    if (!(xi > 0.0)) throw std::domain_error("alpha2: requires xi > 0");
    return 12.0 / xi - 8.0 / 3.0 + (8.0 * std::sqrt(3.0) / 189.0) * std::pow(xi, 1.5) -
           108.0 / (7.0 * xi * xi);
}

namespace {

// g^2/C^2; exactly 0 in the frictionless limit so the correction terms
// vanish without evaluating the (then irrelevant) shape functions.
double resistance_factor(const DamBreakParams& p) {
    return std::isfinite(p.C) ? (p.g * p.g) / (p.C * p.C) : 0.0;
}

}  // namespace

double corrected_depth(const DamBreakParams& p, double t, double x) {
    const double cf = resistance_factor(p);
    double c = (2.0 / 3.0) * p.c0() - (x - p.x0) / (3.0 * t);
    if (cf != 0.0) c += cf * alpha1(xi(p, t, x)) * t;
    else if (!(t > 0.0)) throw std::domain_error("corrected_depth: requires t > 0");
    return c * c / p.g;
}

double corrected_velocity(const DamBreakParams& p, double t, double x) {
    const double cf = resistance_factor(p);
    double u = (2.0 / 3.0) * p.c0() + 2.0 * (x - p.x0) / (3.0 * t);
    if (cf != 0.0) u += cf * alpha2(xi(p, t, x)) * t;
    else if (!(t > 0.0)) throw std::domain_error("corrected_velocity: requires t > 0");
    return u;
}

RegionBounds region_bounds(const DamBreakParams& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("region_bounds: requires t > 0");
    RegionBounds b;
    b.x1 = p.x0 - t * p.c0();
    b.x3 = p.x0 + 2.0 * t * p.c0();

    // Locate the velocity maximum over the fan. The scan excludes x3 itself,
    // where the correction diverges; a maximum on the last scan point means
    // u_c is increasing up to the front, so the tip is empty (x2 = x3).
    const double step = (b.x3 - b.x1) / kScanPoints;
    auto u_of = [&](double x) { return corrected_velocity(p, t, x); };
    int best = 0;
    double best_u = u_of(b.x1);
    for (int k = 1; k < kScanPoints; ++k) {
        const double u = u_of(b.x1 + k * step);
        if (u > best_u) {
            best_u = u;
            best = k;
        }
    }
    if (best == kScanPoints - 1) {
        b.x2 = b.x3;
    } else if (best == 0) {
        b.x2 = b.x1;
    } else {
        b.x2 = golden_max(u_of, b.x1 + (best - 1) * step, b.x1 + (best + 1) * step);
    }
    return b;
}

namespace {

// Shared piecewise logic; returns (h, u).
std::pair<double, double> depth_velocity(const DamBreakParams& p, double t, double x,
                                         const RegionBounds& b) {
    if (x < b.x1) return {p.h_l, 0.0};
    if (x < b.x2) return {corrected_depth(p, t, x), corrected_velocity(p, t, x)};
    if (x < b.x3) return {corrected_depth(p, t, b.x2), corrected_velocity(p, t, b.x2)};
    return {0.0, 0.0};
}

std::pair<double, double> depth_velocity_at(const DamBreakParams& p, double t, double x) {
    if (t < 0.0) throw std::domain_error("dam break solution: requires t >= 0");
    if (t == 0.0) {
        if (x <= p.x0) return {p.h_l, p.u0_plateau};
        return {0.0, 0.0};
    }
    return depth_velocity(p, t, x, region_bounds(p, t));
}

}  // namespace

double h_exact(const DamBreakParams& p, double t, double x) {
    return depth_velocity_at(p, t, x).first;
}

double u_exact(const DamBreakParams& p, double t, double x) {
    return depth_velocity_at(p, t, x).second;
}

double A_exact(const DamBreakParams& p, double T, double t, double x) {
    return T * h_exact(p, t, x);
}

double Q_exact(const DamBreakParams& p, double T, double t, double x) {
    const auto hu = depth_velocity_at(p, t, x);
    return T * hu.first * hu.second;
}

FlowState initial_state(const GridSpec& grid, const DamBreakParams& p, double T, double A_min) {
    FlowState s;
    s.A.resize(grid.M + 1);
    s.Q.resize(grid.M + 1);
    s.time_level = 0;
    for (int j = 0; j <= grid.M; ++j) {
        if (grid.x(j) <= p.x0) {
            s.A[j] = T * p.h_l;
            s.Q[j] = T * p.h_l * p.u0_plateau;
        } else {
            s.A[j] = A_min;
            s.Q[j] = 0.0;
        }
    }
    return s;
}

ExactSolution::ExactSolution(const DamBreakParams& p, double T)
    : p_(p), T_(T), cached_t_(std::numeric_limits<double>::quiet_NaN()), cached_b_{} {
    p.validate();
}

RegionBounds ExactSolution::bounds(double t) const {
    if (t != cached_t_) {
        cached_b_ = region_bounds(p_, t);
        cached_t_ = t;
    }
    return cached_b_;
}

std::pair<double, double> ExactSolution::operator()(double t, double x) const {
    std::pair<double, double> hu;
    if (t < 0.0) throw std::domain_error("dam break solution: requires t >= 0");
    if (t == 0.0) {
        hu = (x <= p_.x0) ? std::pair<double, double>{p_.h_l, p_.u0_plateau}
                          : std::pair<double, double>{0.0, 0.0};
    } else {
        hu = depth_velocity(p_, t, x, bounds(t));
    }
    return {T_ * hu.first, T_ * hu.first * hu.second};
}

PointEvaluator exact_evaluator(const DamBreakParams& p, double T) {
    auto sol = std::make_shared<ExactSolution>(p, T);
    return [sol](double t, double x) { return (*sol)(t, x); };
}

GhostSampler analytic_sampler(const DamBreakParams& p, double T, double A_min) {
    auto sol = std::make_shared<ExactSolution>(p, T);
    return [sol, A_min](double t, double x) -> std::pair<double, double> {
        auto aq = (*sol)(t, x);
        if (aq.first < A_min) return {A_min, 0.0};
        return aq;
    };
}

}  // namespace swe1d
