#include <iostream>

#include "knsaw/cli.hpp"

int main(int argc, char** argv) { return knsaw::cli::main_entry(argc, argv, std::cout, std::cerr); }
