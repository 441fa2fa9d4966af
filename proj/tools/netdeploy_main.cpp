#include "netdeploy/cli.hpp"

int main(int argc, char** argv) { return netdeploy::cli_main(argc, argv); }
