#include <iostream>

#include "catwords/cli.hpp"

int main(int argc, char** argv) { return catwords::run_cli(argc, argv, std::cout, std::cerr); }
