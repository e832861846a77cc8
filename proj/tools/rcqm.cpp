#include "rcqm/cli.hpp"

int main(int argc, char** argv) { return rcqm::cli::run(argc, argv); }
