#include <iostream>

#include "ebc/cli.hpp"

int main(int argc, char** argv) { return ebc::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
