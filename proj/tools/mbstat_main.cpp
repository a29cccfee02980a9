#include <iostream>

#include "mbstat/cli.hpp"

int main(int argc, char** argv) { return mbstat::cli::run(argc, argv, std::cout, std::cerr); }
