#include <iostream>

#include "lipuq/cli.hpp"

int main(int argc, char** argv) {
    return lipuq::cli::run_cli(argc, argv, std::cout, std::cerr);
}
