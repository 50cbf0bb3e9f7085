#include <iostream>

#include "aniso/cli.hpp"

int main(int argc, char** argv) { return aniso::cli::run(argc, argv, std::cout, std::cerr); }
