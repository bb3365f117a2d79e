#pragma once

#include <string>
#include <vector>

#include "swe1d/model.hpp"

namespace swe1d {

// Discrete space-time L2 norm sqrt(dt*dx*sum of squares) of an (N+1)x(M+1)
// sample table. Accumulation is row-major ascending, so a given input always
// produces the identical result. Non-finite samples raise a domain_error
// naming the offending (level, node).
double discrete_norm(const std::vector<std::vector<double>>& samples, double dt, double dx);

// Space-time error norms of a run against an exact-solution evaluator.
struct ErrorPair {
    double errA = 0.0;
    double errQ = 0.0;
    double dt = 0.0, dx = 0.0;
    int N = 0, M = 0;
};

// Samples the evaluator at every grid point of every stored level (level 0
// included) and returns the discrete norms of A - A_exact and Q - Q_exact.
// The run must carry all N+1 levels (no thinning).
ErrorPair error_norms(const std::vector<FlowState>& levels, const PointEvaluator& exact,
                      const GridSpec& grid);

// One refinement rung of a convergence table. A failed rung carries NaN
// errors; ratios are absent when the previous rung is missing, failed, or
// has a zero error.
struct ConvergenceRow {
    double dt = 0.0, dx = 0.0;
    double errA = 0.0, errQ = 0.0;
    double ratioA = 0.0, ratioQ = 0.0;  // errA_prev/errA, errQ_prev/errQ
    double log2A = 0.0, log2Q = 0.0;    // log2 of the ratios
    bool has_ratioA = false, has_ratioQ = false;
    bool failed = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    // CSV with header dt,dx,errA,errQ,ratioA,ratioQ,log2A,log2Q; absent
    // ratios render as "--", failed errors as "nan".
    std::string to_csv() const;
};

// Ratios between successive rungs, in the order the pairs are given
// (coarsest first, so ratios come out > 1 for a converging scheme).
ConvergenceReport convergence_ratios(const std::vector<ErrorPair>& pairs);

}  // namespace swe1d
