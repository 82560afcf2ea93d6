#include "hs/cli.hpp"

int main(int argc, char** argv) { return hs::cli::run_cli(argc, argv); }
