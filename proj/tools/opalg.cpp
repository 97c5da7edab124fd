// SPDX-License-Identifier: Apache-2.0
#include "opalg/cli/cli.hpp"

int main(int argc, char** argv) { return opalg::cli::run(argc, argv); }
