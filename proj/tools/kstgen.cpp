#include <iostream>

#include "kst/cli.hpp"

int main(int argc, char** argv) { return kst::dispatch(argc, argv, std::cout, std::cerr); }
