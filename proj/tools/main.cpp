#include "jfrf/cli.hpp"

int main(int argc, char** argv) { return jfrf::cli::run(argc, argv); }
