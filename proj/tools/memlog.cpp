#include <iostream>

#include "memlog/cli.hpp"

int main(int argc, char** argv) { return memlog::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
