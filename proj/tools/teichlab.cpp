#include "teich/cli.hpp"

int main(int argc, char** argv) { return teich::cli::main_entry(argc, argv); }
