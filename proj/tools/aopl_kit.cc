#include <iostream>

#include "aoplkit/cli.h"

int main(int argc, char **argv) { return aoplkit::run_cli(argc, argv, std::cout, std::cerr); }
