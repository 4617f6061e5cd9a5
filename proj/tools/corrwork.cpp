#include <iostream>

#include "corrwork/cli.hpp"

int main(int argc, char** argv) {
    return corrwork::cli::run(argc, argv, std::cout, std::cerr);
}
