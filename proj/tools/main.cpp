#include <iostream>

#include "trajquad/cli.hpp"

int main(int argc, char** argv) { return trajquad::cli::main(argc, argv, std::cout, std::cerr); }
