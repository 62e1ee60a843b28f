#include <iostream>

#include "zoomcurse/cli_io.hpp"

int main(int argc, char** argv) { return zoomcurse::run_cli(argc, argv, std::cout, std::cerr); }
