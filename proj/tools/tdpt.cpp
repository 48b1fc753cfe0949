#include "tdpt/cli/commands.hpp"

int main(int argc, char** argv) { return tdpt::cli::run(argc, argv); }
