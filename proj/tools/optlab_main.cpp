#include "optlab/cli.hpp"

int main(int argc, char** argv) { return optlab::cli::run(argc, argv); }
