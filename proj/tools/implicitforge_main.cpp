#include <iostream>

#include "implicitforge/cli.hpp"

int main(int argc, char** argv) { return implicitforge::cli::run(argc, argv, std::cout, std::cerr); }
