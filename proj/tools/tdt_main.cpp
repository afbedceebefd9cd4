#include "tdt/cli.hpp"

int main(int argc, char** argv) { return tdt::cli::main(argc, argv); }
