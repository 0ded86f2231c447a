#pragma once

// Entry point of the `qgl` command-line driver. Exit codes: 0 success,
// 1 verification failure, 2 input or configuration error, 3 numerical
// non-convergence.

namespace qgl::cli {

int run(int argc, char** argv);

}  // namespace qgl::cli
