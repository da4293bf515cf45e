#include <iostream>

#include "lpuniq/cli.hpp"

int main(int argc, char** argv) { return lpuniq::run_cli(argc, argv, std::cout, std::cerr); }
