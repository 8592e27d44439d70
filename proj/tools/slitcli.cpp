#include "slitsurf/cli.hpp"

int main(int argc, char** argv) { return slitsurf::cli_main(argc, argv); }
