#include "tradesim/cli.hpp"

int main(int argc, char** argv) { return tradesim::cli::main(argc, argv); }
