#include <iostream>
#include <vector>

#include "modcrit/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return modcrit::cli_main(args, std::cout, std::cerr);
}
