#include <iostream>

#include "conjo/cli.hpp"

int main(int argc, char** argv) { return conjo::cli_main(argc, argv, std::cout, std::cerr); }
