#include "qgl/cli.hpp"

int main(int argc, char** argv) { return qgl::cli::run(argc, argv); }
