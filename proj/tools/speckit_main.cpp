#include <vector>

#include "speckit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return speckit::cli::run(args);
}
