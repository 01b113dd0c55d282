#include "pitchrl/cli.hpp"

int main(int argc, char** argv) { return pitchrl::cli_main(argc, argv); }
