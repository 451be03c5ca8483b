#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return dhg::cli::run(argc, argv, std::cerr); }
