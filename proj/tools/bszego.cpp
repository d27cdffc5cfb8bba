#include <iostream>

#include "bsz/cli.hpp"

int main(int argc, char** argv) { return bsz::run(argc, argv, std::cin, std::cout, std::cerr); }
