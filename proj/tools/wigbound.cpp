#include <iostream>

#include "wigbound/cli.hpp"

int main(int argc, char** argv) { return wigbound::run_cli(argc, argv, std::cout, std::cerr); }
