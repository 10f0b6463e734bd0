#include <iostream>

#include "freemv/cli.hpp"

int main(int argc, char** argv) { return freemv::cli::run(argc, argv, std::cout, std::cerr); }
