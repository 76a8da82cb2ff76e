#include "cicc/cli.hpp"

int main(int argc, char** argv) { return cicc::run_cli(argc, argv); }
