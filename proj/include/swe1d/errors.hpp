#pragma once

#include <stdexcept>
#include <string>

namespace swe1d {

// Bad configuration, bad CLI input, or malformed scenario data. CLI exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The time stepper produced a non-finite value. Carries the first bad location.
// CLI exit code 3.
struct blowup_error : std::runtime_error {
    int time_level;
    int node;
    blowup_error(const std::string& what, int n, int j)
        : std::runtime_error(what), time_level(n), node(j) {}
};

}  // namespace swe1d
