#include <iostream>

#include "strip/cli.hpp"

int main(int argc, char** argv) { return strip::cli::run(argc, argv, std::cout, std::cerr); }
