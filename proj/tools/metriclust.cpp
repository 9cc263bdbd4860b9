#include <iostream>
#include <string>
#include <vector>

#include "metriclust/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return metriclust::cli::run(args, std::cout, std::cerr);
}
