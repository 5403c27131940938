#include <iostream>

#include "polyadica/cli.hpp"

int main(int argc, char** argv) { return polyadica::cli::run(argc, argv, std::cout, std::cerr); }
