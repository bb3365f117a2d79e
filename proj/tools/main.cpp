#include <string>
#include <vector>

#include "swe1d/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return swe1d::run_cli(args);
}
