#include "gbidx/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gbidx::run_cli(argc, argv, std::cout, std::cerr); }
