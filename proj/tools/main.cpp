#include <iostream>

#include "contour/cli.hpp"

int main(int argc, char** argv) {
    return contour::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
