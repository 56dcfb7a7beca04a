#include "repfilter/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return repfilter::run_cli(argc, argv, std::cout, std::cerr);
}
