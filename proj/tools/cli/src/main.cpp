#include <iostream>
#include <string>
#include <vector>

#include "corostab/cli/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return corostab::cli::run(args, std::cout, std::cerr);
}
