#include "fpt/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return fpt::cli::run(argc, argv, std::cout, std::cerr); }
