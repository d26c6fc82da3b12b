#include <iostream>

#include "torsion/cli.hpp"

int main(int argc, char** argv)
{
    return torsion::cli::main_entry(argc, argv, std::cout, std::cerr);
}
