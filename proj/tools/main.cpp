#include "resmgcn/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return resmgcn::cli_main(argc, argv, std::cout, std::cerr);
}
