#include "cli.hpp"

int main(int argc, char** argv) { return fewnomial::cli::run(argc, argv); }
