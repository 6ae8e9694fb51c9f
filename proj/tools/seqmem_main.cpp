#include "seqmem/cli.hpp"

int main(int argc, char** argv) { return seqmem::run_cli(argc, argv); }
