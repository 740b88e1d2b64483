#include "dtflux/cli.hpp"

int main(int argc, char** argv) { return dtflux::cli::run(argc, argv); }
