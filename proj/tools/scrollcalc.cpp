#include <iostream>

#include "scrollcalc/cli.hpp"

int main(int argc, char** argv) {
    return scrollcalc::cli::cli_main(argc, argv, std::cout, std::cerr);
}
