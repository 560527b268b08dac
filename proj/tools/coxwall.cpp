#include "coxwall/cli.hpp"

int main(int argc, char** argv) { return coxwall::cli::run_command(argc, argv); }
