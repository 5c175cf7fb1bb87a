#include "siegel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return siegel::run_cli(argc, argv, std::cout, std::cerr);
}
