#include "quasilattice/cli.hpp"

int main(int argc, char** argv) { return quasilattice::cli_main(argc, argv); }
