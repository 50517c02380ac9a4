#include "qkin/cli.hpp"

int main(int argc, char** argv) { return qkin::cli::main_entry(argc, argv); }
