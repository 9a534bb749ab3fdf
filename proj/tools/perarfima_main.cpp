#include "perarfima/cli.hpp"

int main(int argc, char** argv) { return perarfima::cli::run(argc, argv); }
