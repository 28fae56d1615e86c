#include <iostream>

#include "hawkrad/cli.hpp"

int main(int argc, char** argv) { return hawkrad::cli::main(argc, argv, std::cout, std::cerr); }
