#include "commands.hpp"

int main(int argc, char** argv) { return invbasis::cli::run(argc, argv); }
