#include <iostream>

#include "pbx/cli.hpp"

int main(int argc, char** argv) { return pbx::run_cli(argc, argv, std::cout, std::cerr); }
