#include <iostream>

#include "oplab/cli/run.hpp"

int main(int argc, char** argv) { return oplab::cli::main_entry(argc, argv, std::cout, std::cerr); }
