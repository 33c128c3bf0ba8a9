#include <iostream>
#include <string>
#include <vector>

#include "pmstair/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pmstair::cli::run(args, std::cerr);
}
