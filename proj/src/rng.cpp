// SPDX-License-Identifier: Apache-2.0

#include "phasefit/rng.hpp"

#include <cmath>
#include <numbers>

namespace phasefit {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t s = mix64(master ^ 0xa0761d6478bd642full);
    s = mix64(s ^ a);
    s = mix64(s ^ b);
    s = mix64(s ^ c);
    return s;
}

double Rng::uniform() {
    // 53 high bits -> dyadic rational in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the log argument nonzero
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(ang);
    has_spare_ = true;
    return r * std::cos(ang);
}

cplx Rng::circular_gaussian(double variance) {
    double s = std::sqrt(variance / 2.0);
    double re = s * gaussian();
    double im = s * gaussian();
    return {re, im};
}

} // namespace phasefit
