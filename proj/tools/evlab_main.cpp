#include "evlab/cli.hpp"

int main(int argc, char** argv) { return evlab::run_cli(argc, argv); }
