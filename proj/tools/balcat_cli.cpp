#include "balcat/cli.hpp"

int main(int argc, char** argv) { return balcat::cli::main_entry(argc, argv); }
