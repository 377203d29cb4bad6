#include "toeplitz_chains/cli.hpp"

int main(int argc, char** argv) { return toeplitz_chains::run_cli(argc, argv); }
