#include "limem/cli.hpp"

int main(int argc, char** argv) { return limem::cli_main(argc, argv); }
