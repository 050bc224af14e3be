#include <iostream>

#include "lbsim/cli.hpp"

int main(int argc, char** argv) {
    return lbsim::cli::run(argc, argv, std::cout, std::cerr);
}
