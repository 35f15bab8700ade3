#include "tropnet/cli.hpp"

int main(int argc, char** argv) { return tropnet::cli::run(argc, argv); }
