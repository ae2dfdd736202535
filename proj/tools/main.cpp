#include "cli.hpp"

int main(int argc, char** argv) { return rhc::cli::main_entry(argc, argv); }
