#include "awalk/cli.hpp"

int main(int argc, char** argv) { return awalk::cli::main_cli(argc, argv); }
