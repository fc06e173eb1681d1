#include <iostream>

#include "narayana/cli.hpp"

int main(int argc, char** argv) { return narayana::cli::run_cli(argc, argv, std::cout, std::cerr); }
