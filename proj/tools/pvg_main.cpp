#include "pvg/cli.hpp"

int main(int argc, char** argv) { return pvg::run_cli(argc, argv); }
