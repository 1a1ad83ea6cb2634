#include "faultscale/cli.hpp"

int main(int argc, char** argv) { return faultscale::run_cli(argc, argv); }
