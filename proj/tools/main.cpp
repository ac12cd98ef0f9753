// SPDX-License-Identifier: Apache-2.0

#include "phasefit/cli.hpp"

int main(int argc, char** argv) { return phasefit::cli_main(argc, argv); }
