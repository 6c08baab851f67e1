#include <iostream>

#include "mlg/cli/cli.hpp"

int main(int argc, char** argv) { return mlg::cli::dispatch(argc, argv, std::cout, std::cerr); }
