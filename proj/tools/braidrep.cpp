#include <iostream>

#include "braidrep/cli.hpp"

int main(int argc, char** argv) { return braidrep::run_cli(argc, argv, std::cout, std::cerr); }
