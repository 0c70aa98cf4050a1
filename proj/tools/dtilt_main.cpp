#include <iostream>

#include "dtilt/cli.hpp"

int main(int argc, char** argv) {
    return dtilt::cli::run(argc, argv, std::cout, std::cerr);
}
