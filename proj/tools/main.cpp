#include "delopt/cli.hpp"

int main(int argc, char** argv) { return delopt::run_cli(argc, argv); }
