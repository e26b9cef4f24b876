#include "hamrobust/cli.hpp"

int main(int argc, char** argv) { return hamrobust::cli::run_main(argc, argv); }
