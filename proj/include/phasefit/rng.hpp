// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "phasefit/model.hpp"

namespace phasefit {

/// Stateless avalanche mix (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t z);

/// Derives an independent stream seed from a master seed and three
/// coordinates (e.g. sweep-point indices and a stage tag). The same
/// inputs always give the same seed, on every platform.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Deterministic random source. Gaussian variates use an explicit
/// Box-Muller transform instead of std::normal_distribution, whose
/// output is not specified bit-for-bit across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1).
    double uniform();

    /// Standard normal N(0, 1).
    double gaussian();

    /// Circularly-symmetric complex normal with total variance `variance`
    /// (variance/2 per real component).
    cplx circular_gaussian(double variance);

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace phasefit
