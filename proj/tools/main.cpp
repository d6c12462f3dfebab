#include "ejcm/cli.hpp"

int main(int argc, char** argv) { return ejcm::cli::main_entry(argc, argv); }
