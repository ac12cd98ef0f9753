// SPDX-License-Identifier: Apache-2.0

#include "phasefit/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phasefit {

namespace {

// Iterative radix-2 transform with a direct twiddle table. Each factor is
// computed from its own angle rather than by repeated multiplication, so
// round-off does not accumulate across butterfly stages.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("transform length must be a nonzero power of two");
    if (n == 1)
        return;

    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> tw(n / 2);
    for (size_t k = 0; k < n / 2; ++k) {
        double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(ang), std::sin(ang)};
    }

    for (size_t len = 2; len <= n; len <<= 1) {
        const size_t stride = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * tw[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

std::vector<cplx> transform(std::span<const cplx> x, bool inverse) {
    std::vector<cplx> a(x.begin(), x.end());
    fft_pow2(a, inverse);
    const double scale = 1.0 / std::sqrt(static_cast<double>(a.size()));
    for (cplx& v : a)
        v *= scale;
    return a;
}

} // namespace

std::vector<cplx> dft_unitary(std::span<const cplx> x) { return transform(x, false); }

std::vector<cplx> idft_unitary(std::span<const cplx> x) { return transform(x, true); }

} // namespace phasefit
