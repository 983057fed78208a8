#include "orisvlc/cli.hpp"

int main(int argc, char** argv) { return orisvlc::run_cli(argc, argv); }
