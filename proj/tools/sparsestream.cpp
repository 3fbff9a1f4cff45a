#include <iostream>

#include "sparsestream/cli.hpp"

int main(int argc, char** argv) { return sparsestream::cli::run(argc, argv, std::cout, std::cerr); }
