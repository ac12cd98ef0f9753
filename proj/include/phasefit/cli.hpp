// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace phasefit {

/// Command-line entry point. Subcommands: simulate, estimate, patterns,
/// moments. Returns 0 on success, 1 on configuration or usage errors,
/// 2 on IO errors.
int cli_main(int argc, const char* const* argv);

} // namespace phasefit
