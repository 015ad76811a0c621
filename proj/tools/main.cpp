#include "quermass/cli.hpp"

int main(int argc, char** argv) { return quermass::cli::run_cli(argc, argv); }
