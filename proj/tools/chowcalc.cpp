#include <chowcalc/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return chowcalc::cli::main(argc, argv, std::cout, std::cerr); }
