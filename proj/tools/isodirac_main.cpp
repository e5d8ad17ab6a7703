#include "isodirac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return isodirac::cli::run(argc, argv, std::cout, std::cerr); }
