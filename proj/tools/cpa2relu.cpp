#include <iostream>

#include "cpa2relu/cli.hpp"

int main(int argc, char** argv) { return cpa2relu::cli::run(argc, argv, std::cout, std::cerr); }
