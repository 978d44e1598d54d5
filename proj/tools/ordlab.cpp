#include <iostream>

#include "ordlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ordlab::cli_dispatch(args, std::cout, std::cerr);
}
