#include <iostream>

#include "lstreg/cli.hpp"

int main(int argc, char** argv) { return lstreg::run_cli(argc, argv, std::cout, std::cerr); }
