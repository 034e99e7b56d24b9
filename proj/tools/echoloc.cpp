#include "echoloc/cli.hpp"

int main(int argc, char** argv) { return echoloc::cli::run(argc, argv); }
