#include <iostream>

#include "mubcert/cli.hpp"

int main(int argc, char** argv) { return mubcert::run_cli(argc, argv, std::cout, std::cerr); }
