#include <iostream>

#include "uqres/cli.hpp"

int main(int argc, char** argv) { return uqres::run_cli(argc, argv, std::cout, std::cerr); }
