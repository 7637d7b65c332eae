#include <iostream>

#include "domrecon/cli.hpp"

int main(int argc, char** argv) { return domrecon::run_cli(argc, argv, std::cout, std::cerr); }
