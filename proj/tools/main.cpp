#include <iostream>

#include "spectraltie/cli.hpp"

int main(int argc, char** argv) { return spectraltie::cli::run(argc, argv, std::cout, std::cerr); }
