#include "polyrec/cli.hpp"

int main(int argc, char** argv) { return polyrec::cli::run(argc, argv); }
