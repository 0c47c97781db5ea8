#include <iostream>

#include "prymrank/cli.hpp"

int main(int argc, char** argv) { return prymrank::run_cli(argc, argv, std::cout, std::cerr); }
