#include <iostream>

#include "specsing/cli.hpp"

int main(int argc, char** argv) { return specsing::run_cli(argc, argv, std::cout, std::cerr); }
