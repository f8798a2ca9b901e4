#include "nucav/cli.hpp"

int main(int argc, char** argv) { return nucav::run_cli(argc, argv); }
