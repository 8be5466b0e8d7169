#include <iostream>

#include "gcache_cli/cli.hpp"

int main(int argc, char** argv) { return gcache::cli::run(argc, argv, std::cout, std::cerr); }
