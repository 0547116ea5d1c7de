#include "nestkit/cli.hpp"

int main(int argc, char** argv) { return nestkit::run_cli(argc, argv); }
