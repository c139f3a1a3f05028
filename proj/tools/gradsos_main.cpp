#include "gradsos/cli.hpp"

int main(int argc, char** argv) { return gradsos::cli_main(argc, argv); }
