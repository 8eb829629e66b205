#include "laminar/cli.hpp"

int main(int argc, char** argv) { return laminar::cli::run(argc, argv); }
