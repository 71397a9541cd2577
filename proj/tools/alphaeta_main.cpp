#include "alphaeta/cli.hpp"

int main(int argc, char** argv) { return aeta::run_cli(argc, argv); }
