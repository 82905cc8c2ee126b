#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    const auto outcome = jetdiff::cli::main_entry(args);
    std::cout << outcome.out;
    std::cerr << outcome.err;
    return static_cast<int>(outcome.code);
}
