#include <iostream>

#include "newton_shape/cli.hpp"

int main(int argc, char** argv) { return nshape::run_cli(argc, argv, std::cout, std::cerr); }
