#include "pvfreq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pvfreq::cli_dispatch(argc, argv, std::cout, std::cerr); }
