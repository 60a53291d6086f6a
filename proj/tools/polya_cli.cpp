#include <iostream>

#include "polya/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return polya::run_cli(args, std::cout, std::cerr);
}
