#include "arcnash/cli.hpp"

int main(int argc, char** argv) { return arcnash::run_cli(argc, argv); }
