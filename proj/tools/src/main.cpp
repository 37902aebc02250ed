#include <iostream>

#include "tripec/cli.hpp"

int main(int argc, char** argv) { return tripec::run_command(argc, argv, std::cout, std::cerr); }
