#include "argo/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return argo::cli::run(argc, argv, std::cout, std::cerr); }
