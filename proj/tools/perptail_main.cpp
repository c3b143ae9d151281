#include "perptail/cli/run.hpp"

int main(int argc, char** argv) { return perptail::run_main(argc, argv); }
