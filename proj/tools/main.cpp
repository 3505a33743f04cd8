#include <iostream>

#include "loopauto/cli.hpp"

int main(int argc, char** argv) {
    return loopauto::cli::run_cli(argc, argv, std::cout, std::cerr);
}
