#include <krspace/cli.hpp>

int main(int argc, char** argv) { return krspace::cli::run_main(argc, argv); }
