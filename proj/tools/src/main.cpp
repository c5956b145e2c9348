#include <iostream>

#include "ssdlab_cli/cli.hpp"

int main(int argc, char** argv) { return ssdlab::cli::run(argc, argv, std::cout, std::cerr); }
