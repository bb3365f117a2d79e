#pragma once

#include <string>
#include <vector>

namespace swe1d {

// One time level extracted from a run CSV.
struct ProfileSeries {
    double t = 0.0;
    std::vector<double> x, A, Q;
    std::vector<double> A_exact, Q_exact;  // empty when the CSV has no oracle columns
    bool has_exact = false;
};

// Parses a t,x,A,Q[,A_exact,Q_exact] CSV into per-level series, in file order.
std::vector<ProfileSeries> parse_run_csv(const std::string& content);

// Two-panel SVG (area and discharge against x) for one time level. Output
// bytes depend only on the input values.
std::string profile_svg(const ProfileSeries& series);

}  // namespace swe1d
