#include <iostream>

#include "rbox/cli.hpp"

int main(int argc, char** argv) { return rbox::cli_main(argc, argv, std::cout, std::cerr); }
