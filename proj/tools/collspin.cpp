#include "collspin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return collspin::cli_main(argc, argv, std::cout, std::cerr); }
