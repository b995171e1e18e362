#include "varpstokes/cli.hpp"

int main(int argc, char** argv) { return varpstokes::run_cli(argc, argv); }
