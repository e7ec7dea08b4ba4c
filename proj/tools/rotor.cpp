#include <iostream>

#include "rotor/cli.hpp"

int main(int argc, char** argv) { return rotor::run_cli(argc, argv, std::cout, std::cerr); }
