#include <iostream>

#include "pbandit/cli/commands.hpp"

int main(int argc, char** argv) { return pbandit::cli::run_cli(argc, argv, std::cout, std::cerr); }
