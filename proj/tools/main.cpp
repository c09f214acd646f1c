#include <iostream>

#include "tanglekit/cli.hpp"

int main(int argc, char** argv) { return tk::cli::run(argc, argv, std::cout, std::cerr); }
