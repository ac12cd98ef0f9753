// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "phasefit/model.hpp"

namespace phasefit {

/// Unitary DFT, forward: X(k) = (1/sqrt(N)) sum_n x(n) e^{-j 2 pi k n / N}.
/// N must be a power of two.
std::vector<cplx> dft_unitary(std::span<const cplx> x);

/// Unitary inverse DFT: x(n) = (1/sqrt(N)) sum_k X(k) e^{+j 2 pi k n / N}.
std::vector<cplx> idft_unitary(std::span<const cplx> x);

} // namespace phasefit
