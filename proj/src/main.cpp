#include <iostream>

#include "gext/cli.hpp"

int main(int argc, char** argv) { return gext::run_cli(argc, argv, std::cout, std::cerr); }
