#include "symhyp/cli.hpp"

int main(int argc, char** argv) { return symhyp::cli::run_cli(argc, argv); }
