#include "causeway/cli.hpp"

int main(int argc, char** argv) { return causeway::run_cli(argc, argv); }
