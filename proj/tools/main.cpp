#include <iostream>

#include "fracmkt/cli.hpp"

int main(int argc, char** argv) { return fracmkt::cli::run(argc, argv, std::cout, std::cerr); }
