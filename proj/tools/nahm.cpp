#include <iostream>

#include "nahm/cli.hpp"

int main(int argc, char** argv) { return nahm::run_cli(argc, argv, std::cout, std::cerr); }
