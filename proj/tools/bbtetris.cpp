#include <iostream>

#include "bbtetris/cli.hpp"

int main(int argc, char** argv) { return bbtetris::cli::run(argc, argv, std::cout, std::cerr); }
