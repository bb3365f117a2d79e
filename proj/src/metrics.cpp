#include "swe1d/metrics.hpp"

#include <cmath>

#include "swe1d/csv.hpp"

namespace swe1d {

double discrete_norm(const std::vector<std::vector<double>>& samples, double dt, double dx) {
    if (samples.empty() || samples.front().empty())
        throw std::domain_error("discrete_norm: sample table must be nonempty");
    if (!(dt > 0.0 && dx > 0.0))
        throw std::domain_error("discrete_norm: dt and dx must be positive");
    const std::size_t cols = samples.front().size();
    double sum = 0.0;
    for (std::size_t n = 0; n < samples.size(); ++n) {
        if (samples[n].size() != cols)
            throw std::domain_error("discrete_norm: ragged sample table at level " +
                                    std::to_string(n));
        for (std::size_t j = 0; j < cols; ++j) {
            const double w = samples[n][j];
            if (!std::isfinite(w))
                throw std::domain_error("discrete_norm: non-finite sample at level " +
                                        std::to_string(n) + ", node " + std::to_string(j));
            sum += w * w;
        }
    }
    return std::sqrt(dt * dx * sum);
}

ErrorPair error_norms(const std::vector<FlowState>& levels, const PointEvaluator& exact,
                      const GridSpec& grid) {
    if (static_cast<int>(levels.size()) != grid.N + 1)
        throw config_error("error_norms: run must carry all N+1 levels");

    std::vector<std::vector<double>> dA(grid.N + 1), dQ(grid.N + 1);
    for (int n = 0; n <= grid.N; ++n) {
        const FlowState& s = levels[n];
        if (static_cast<int>(s.A.size()) != grid.M + 1)
            throw config_error("error_norms: level " + std::to_string(n) +
                               " does not have M+1 nodes");
        dA[n].resize(grid.M + 1);
        dQ[n].resize(grid.M + 1);
        const double t = grid.t(n);
        for (int j = 0; j <= grid.M; ++j) {
            const auto [Ae, Qe] = exact(t, grid.x(j));
            dA[n][j] = s.A[j] - Ae;
            dQ[n][j] = s.Q[j] - Qe;
        }
    }

    ErrorPair e;
    e.errA = discrete_norm(dA, grid.dt, grid.dx);
    e.errQ = discrete_norm(dQ, grid.dt, grid.dx);
    e.dt = grid.dt;
    e.dx = grid.dx;
    e.N = grid.N;
    e.M = grid.M;
    return e;
}

ConvergenceReport convergence_ratios(const std::vector<ErrorPair>& pairs) {
    ConvergenceReport rep;
    rep.rows.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        ConvergenceRow row;
        row.dt = pairs[k].dt;
        row.dx = pairs[k].dx;
        row.errA = pairs[k].errA;
        row.errQ = pairs[k].errQ;
        row.failed = !std::isfinite(row.errA) || !std::isfinite(row.errQ);
        if (k > 0) {
            const ErrorPair& prev = pairs[k - 1];
            if (std::isfinite(prev.errA) && std::isfinite(row.errA) && row.errA != 0.0) {
                row.ratioA = prev.errA / row.errA;
                row.log2A = std::log2(row.ratioA);
                row.has_ratioA = true;
            }
            if (std::isfinite(prev.errQ) && std::isfinite(row.errQ) && row.errQ != 0.0) {
                row.ratioQ = prev.errQ / row.errQ;
                row.log2Q = std::log2(row.ratioQ);
                row.has_ratioQ = true;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::string ConvergenceReport::to_csv() const {
    std::string out = "dt,dx,errA,errQ,ratioA,ratioQ,log2A,log2Q\n";
    for (const ConvergenceRow& r : rows) {
        out += format_g17(r.dt) + "," + format_g17(r.dx) + "," + format_g17(r.errA) + "," +
               format_g17(r.errQ) + ",";
        out += r.has_ratioA ? format_g17(r.ratioA) : "--";
        out += ",";
        out += r.has_ratioQ ? format_g17(r.ratioQ) : "--";
        out += ",";
        out += r.has_ratioA ? format_g17(r.log2A) : "--";
        out += ",";
        out += r.has_ratioQ ? format_g17(r.log2Q) : "--";
        out += "\n";
    }
    return out;
}

}  // namespace swe1d
