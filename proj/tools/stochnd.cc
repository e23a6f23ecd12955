#include <iostream>

#include "stochnd/cli.hh"

int main(int argc, char** argv) { return stochnd::run(argc, argv, std::cout, std::cerr); }
