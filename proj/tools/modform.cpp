#include <iostream>

#include "modform/cli.hpp"

int main(int argc, char** argv) { return modform::run_command(argc, argv, std::cout, std::cerr); }
