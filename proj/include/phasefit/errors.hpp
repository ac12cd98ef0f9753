// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace phasefit {

/// Bad configuration content or values; maps to CLI exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem or format failure on an external file; maps to CLI exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace phasefit
