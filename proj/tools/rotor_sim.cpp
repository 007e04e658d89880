#include <iostream>

#include "rotor/cli/commands.hpp"

int main(int argc, char** argv) { return rotor::cli::main_entry(argc, argv, std::cerr); }
