#include "cli.hpp"

int main(int argc, char** argv) { return cflrand::cli::run(argc, argv, std::cout, std::cerr); }
