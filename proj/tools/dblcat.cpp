#include <iostream>

#include "dbl/io.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return dbl::run_cli(args, std::cout, std::cerr);
}
