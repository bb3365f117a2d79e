#include "swe1d/stability.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include <json.hpp>

namespace swe1d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CondResult trivially_satisfied() { return {true, kInf, 0.0, kInf}; }

CondResult compare(double lhs, double rhs) { return {lhs <= rhs, rhs - lhs, lhs, rhs}; }

void check_phi(double phi) {
    if (phi == 0.0 || !std::isfinite(phi))
        throw std::domain_error("stability: phi must be finite and nonzero");
}

double rstar_bound(double r_star) {
    if (!(r_star > 0.0 && r_star < 1.0))
        throw config_error("stability: r_star must lie in (0, 1)");
    return std::max(1.0 + std::sqrt(1.0 - r_star), std::sqrt(r_star));
}

void check_grid(double dt, double dx) {
    if (!(std::isfinite(dt) && dt > 0.0 && std::isfinite(dx) && dx > 0.0))
        throw std::domain_error("stability: dt and dx must be finite and positive");
}

double max_of(std::initializer_list<double> terms) {
    double m = -kInf;
    for (double v : terms) m = std::max(m, v);
    return m;
}

}  // namespace

double gamma0(const ChannelGeometry& geom) {
    const double c = geom.n1 / 1.49;
    return geom.g * c * c * std::pow(geom.P, 4.0 / 3.0);
}

FlowBounds flow_bounds(const ChannelGeometry& geom, const FlowState& state) {
    if (state.A.empty() || state.A.size() != state.Q.size())
        throw std::domain_error("flow_bounds: state must have matching nonempty A and Q");
    FlowBounds b;
    b.absA = kInf;
    for (std::size_t j = 0; j < state.A.size(); ++j) {
        const double A = state.A[j];
        const double absQ = std::fabs(state.Q[j]);
        if (!(std::isfinite(A) && A > 0.0) || !std::isfinite(absQ))
            throw std::domain_error("flow_bounds: state values must be finite with A > 0");
        b.absA = std::min(b.absA, A);
        b.maxQ = std::max(b.maxQ, absQ);
        b.mu = std::max(b.mu, absQ / A);
    }
    if (b.mu > 0.0) {
        const double g0 = gamma0(geom);
        b.Rn = (geom.g / geom.T) * b.absA / b.mu + b.mu;
        b.Pn = (geom.P * geom.tau_bar / geom.rho) / b.maxQ + g0 * b.mu * std::pow(b.absA, -4.0 / 3.0);
        b.Nn = (geom.g / (2.0 * geom.T)) * b.maxQ / b.mu;
    }
    return b;
}

double envelope(double dt, double dx) {
    check_grid(dt, dx);
    const double lam = dt / dx;
    return dt + dt * dt + lam + dt * lam + dt * dt * lam + lam * lam;
}

double w1(double dt, double dx, double phi, const FlowBounds& b) {
    const double E = envelope(dt, dx);
    const double aphi = std::fabs(phi);
    const double m = max_of({b.Pn, 2.0 * b.Pn * b.Pn, 0.5 * b.Rn * aphi, b.mu * aphi,
                             b.Pn * b.mu * aphi, 6.0 * b.Pn * b.Pn * b.mu * aphi,
                             2.0 * b.Rn * b.Pn * aphi});
    return 0.5 + (1.0 + 4.0 * E * m);
}

double w2(double dt, double dx, double phi, const FlowBounds& b) {
    if (!(b.mu > 0.0)) throw std::domain_error("w2: requires mu > 0");
    const double E = envelope(dt, dx);
    const double aphi = std::fabs(phi);
    const double lam = dt / dx;
    const double inner =
        1.0 + (4.0 + b.Rn / b.mu + 1.0 / b.Rn + b.Nn * b.Rn / b.mu) * (1.0 + lam * b.mu) * aphi;
    const double m = max_of({b.Pn, b.Nn, b.Rn * b.Pn, b.Nn * b.Pn, b.Rn * b.mu, b.Pn * b.Pn,
                             b.Nn * b.Nn, b.Pn * b.Pn * b.mu, b.Rn * b.Rn * b.mu,
                             b.Rn * b.Rn * b.mu * b.mu, b.Rn * b.Pn * b.mu, b.Rn * b.Nn * b.mu});
    return (b.Pn + 0.5 * b.Rn) * aphi + b.mu * (1.0 + 4.0 * E * inner * m);
}

double w3(double dt, double dx, double phi, const FlowBounds& b) {
    if (!(b.mu > 0.0)) throw std::domain_error("w3: requires mu > 0");
    const double E = envelope(dt, dx);
    const double aphi = std::fabs(phi);
    const double lam = dt / dx;
    const double inner =
        1.0 + b.Nn * b.Rn / b.mu +
        (4.0 + 2.0 * b.Pn + 1.0 / b.Rn + b.mu / b.Rn + 4.0 * b.Nn / (b.Rn * b.mu) + lam * b.mu) *
            aphi;
    const double m = max_of({b.Pn, b.Nn, b.Nn * b.Pn, b.Rn * b.mu, b.Pn * b.Pn, b.Nn * b.Nn,
                             b.Rn * b.Rn * b.mu, b.Pn * b.Rn * b.mu, b.Rn * b.Rn * b.mu * b.mu,
                             b.Rn * b.Nn * b.mu});
    return (b.Pn + 0.5 * b.Rn) * aphi + 1.5 * b.mu * (aphi + 2.0 * E * inner * m);
}

CondResult cond_A(double dt, double dx, double phi, double gamma0, const FlowBounds& b) {
    check_phi(phi);
    check_grid(dt, dx);
    if (b.mu == 0.0) return trivially_satisfied();
    const double lhs = (dt * dt * dt / (dx * dx)) *
                       (1.0 + (2.0 * dt / 3.0) * gamma0 * b.mu * std::pow(b.absA, -4.0 / 3.0));
    const double rhs =
        3.0 / gamma0 * std::pow(b.mu, -3.0) * std::pow(b.absA, 4.0 / 3.0) / (phi * phi);
    return compare(lhs, rhs);
}

CondResult cond_Q(double dt, double dx, double phi, double r_star, const FlowBounds& b) {
    check_phi(phi);
    check_grid(dt, dx);
    const double rhs = rstar_bound(r_star);
    if (b.mu == 0.0) return trivially_satisfied();
    const double lhs =
        dt * (3.0 * b.Pn * w1(dt, dx, phi, b) +
              std::max(w2(dt, dx, phi, b), w3(dt, dx, phi, b)) / dx);
    return compare(lhs, rhs);
}

CondResult cond_combined(double dt, double dx, double phi, double r_star, double gamma0,
                         const FlowBounds& b) {
    check_phi(phi);
    check_grid(dt, dx);
    const double rb = rstar_bound(r_star);
    if (b.mu == 0.0) return trivially_satisfied();
    const double growth = 3.0 * b.Pn * w1(dt, dx, phi, b) +
                          std::max(w2(dt, dx, phi, b), w3(dt, dx, phi, b)) / dx;
    const double lhs = (std::pow(dt, 4.0) / (dx * dx)) * growth *
                       (1.0 + (2.0 * dt / 3.0) * gamma0 * b.mu * std::pow(b.absA, -4.0 / 3.0));
    const double rhs =
        3.0 * rb / gamma0 * std::pow(b.mu, -3.0) * std::pow(b.absA, 4.0 / 3.0) / (phi * phi);
    return compare(lhs, rhs);
}

CondResult empirical_dt_bound(double dt, double dx, double phi, double r_star, double gamma0,
                              double mu, double absA) {
    check_phi(phi);
    check_grid(dt, dx);
    const double rb = rstar_bound(r_star);
    if (mu == 0.0) return trivially_satisfied();
    const double lhs = (std::pow(dt, 4.0) / (dx * dx)) *
                       (3.0 * std::pow(absA, 4.0 / 3.0) + 2.0 * dt * gamma0 * mu);
    const double rhs = 9.0 * rb / gamma0 * std::pow(mu, -3.0) * std::pow(absA, 8.0 / 3.0) /
                       (phi * phi);
    return compare(lhs, rhs);
}

double amp_modulus_A_squared(double dt, double dx, double phi, double gamma1_mod,
                             double gamma2_mod, double alpha2) {
    check_grid(dt, dx);
    const double k2 = 2.0 * dt * dt / (3.0 * dx) * gamma2_mod;
    const double re = 1.0 - k2 * phi * std::sin(alpha2);
    const double im = (dt / dx) * gamma1_mod + k2 * std::cos(alpha2);
    return re * re + im * im * phi * phi;
}

double max_stable_dt(double dx, double phi, double r_star, const ChannelGeometry& geom,
                     const FlowState& state) {
    check_phi(phi);
    if (!(std::isfinite(dx) && dx > 0.0))
        throw std::domain_error("max_stable_dt: dx must be finite and positive");
    const double g0 = gamma0(geom);
    const FlowBounds b = flow_bounds(geom, state);
    if (b.mu == 0.0) return dx;

    auto ok = [&](double dt) { return cond_combined(dt, dx, phi, r_star, g0, b).satisfied; };
    if (ok(dx)) return dx;

    double lo = dx;
    while (!ok(lo)) {
        lo *= 0.5;
        if (lo < dx * 1e-300)
            throw std::domain_error("max_stable_dt: no satisfiable dt in (0, dx]");
    }
    double hi = std::min(2.0 * lo, dx);
    while (hi - lo > 1e-6 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

StabilityReport evaluate_stability(double dt, double dx, double phi, double r_star,
                                   const ChannelGeometry& geom, const FlowState& state) {
    StabilityReport r;
    r.dt = dt;
    r.dx = dx;
    r.phi = phi;
    r.r_star = r_star;
    r.gamma0 = gamma0(geom);
    r.bounds = flow_bounds(geom, state);
    r.area = cond_A(dt, dx, phi, r.gamma0, r.bounds);
    r.discharge = cond_Q(dt, dx, phi, r_star, r.bounds);
    r.combined = cond_combined(dt, dx, phi, r_star, r.gamma0, r.bounds);
    r.empirical = empirical_dt_bound(dt, dx, phi, r_star, r.gamma0, r.bounds.mu, r.bounds.absA);
    return r;
}

namespace {

nlohmann::json cond_json(const CondResult& c) {
    return {{"satisfied", c.satisfied}, {"slack", c.slack}, {"lhs", c.lhs}, {"rhs", c.rhs}};
}

}  // namespace

std::string to_json(const StabilityReport& r) {
    nlohmann::json j;
    j["inputs"] = {{"dt", r.dt},          {"dx", r.dx},
                   {"phi", r.phi},        {"r_star", r.r_star},
                   {"gamma0", r.gamma0},  {"mu", r.bounds.mu},
                   {"absA", r.bounds.absA}, {"maxQ", r.bounds.maxQ},
                   {"Rn", r.bounds.Rn},   {"Pn", r.bounds.Pn},
                   {"Nn", r.bounds.Nn}};
    j["cond_A"] = cond_json(r.area);
    j["cond_Q"] = cond_json(r.discharge);
    j["cond_combined"] = cond_json(r.combined);
    j["empirical_dt_bound"] = cond_json(r.empirical);
    return j.dump(2);
}

}  // namespace swe1d
