#include "cli.hpp"

int main(int argc, char** argv) { return logmeans::cli::main_entry(argc, argv); }
