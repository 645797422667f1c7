#include <iostream>

#include "zoom3d/cli.hpp"

int main(int argc, char** argv) { return zoom3d::cli::run(argc, argv, std::cout, std::cerr); }
