#include <iostream>
#include <string>
#include <vector>

#include "symkit/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return symkit::cli::run(args, std::cout, std::cerr);
}
