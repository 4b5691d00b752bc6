#include <iostream>

#include "pseudochar/cli.hpp"

int main(int argc, char** argv) { return pseudochar::cli::run(argc, argv, std::cout, std::cerr); }
