#include <iostream>

#include "qbm_cli/cli.hpp"

int main(int argc, char** argv) { return qbm::cli::run_cli(argc, argv, std::cout, std::cerr); }
