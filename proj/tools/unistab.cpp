#include "unistab/cli.hpp"

int main(int argc, char** argv) { return unistab::cli::main_entry(argc, argv); }
