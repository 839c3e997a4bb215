#include <iostream>

#include "frog/cli.hpp"

int main(int argc, char** argv) { return frog::cli::main(argc, argv, std::cout, std::cerr); }
