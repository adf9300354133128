#include <iostream>

#include "umlsem/cli/commands.hpp"

int main(int argc, char** argv) { return umlsem::cli::run(argc, argv, std::cout, std::cerr); }
