#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return commcalc::cli::runCli(argc, argv, std::cout, std::cerr); }
