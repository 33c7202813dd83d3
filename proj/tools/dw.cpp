#include <iostream>

#include "dw/cli.hpp"

int main(int argc, char** argv) {
    return dw::cli::run(argc, argv, std::cout, std::cerr);
}
