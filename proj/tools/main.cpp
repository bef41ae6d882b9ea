#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return l1rank::cli::run(argc, argv, std::cout, std::cerr); }
