#include <iostream>

#include "radii/cli.hpp"

int main(int argc, char** argv) { return radii::run_cli(argc, argv, std::cout, std::cerr); }
