#include "xc/cli.hpp"

int main(int argc, char** argv) { return xc::run_cli(argc, argv); }
