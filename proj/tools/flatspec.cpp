#include <iostream>

#include "flatspec/cli.hpp"

int main(int argc, char** argv) { return flatspec::run_cli(argc, argv, std::cout, std::cerr); }
