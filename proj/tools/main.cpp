#include <iostream>

#include "netnorm/cli.hpp"

int main(int argc, char** argv) { return netnorm::cli::run(argc, argv, std::cout, std::cerr); }
