#include "cli.hpp"

int main(int argc, char** argv) { return fkz::cli_main(argc, argv); }
