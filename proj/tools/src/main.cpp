#include <iostream>
#include <string>
#include <vector>

#include "cawm_tools/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cawm::tools::run_cli(args, std::cout, std::cerr);
}
