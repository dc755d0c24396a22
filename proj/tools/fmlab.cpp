#include <iostream>

#include "fmlab/cli.hpp"

int main(int argc, char** argv) { return fmlab::run(argc, argv, std::cout, std::cerr); }
