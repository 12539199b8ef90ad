#include <iostream>
#include <vector>

#include "memspike/cli.hpp"

int main(int argc, char** argv) {
    return memspike::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                             std::cerr);
}
