#include <iostream>

#include "qwave/cli.hpp"

int main(int argc, char** argv) { return qwave::run_qwave(argc, argv, std::cout, std::cerr); }
