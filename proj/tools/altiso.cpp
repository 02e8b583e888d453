#include "altiso/cli.hpp"

int main(int argc, char** argv) { return altiso::cli::main(argc, argv); }
