#include <iostream>
#include <string>
#include <vector>

#include "asa/cli.hpp"

int main(int argc, char** argv) {
    return asa::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
