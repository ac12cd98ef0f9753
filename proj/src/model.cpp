// SPDX-License-Identifier: Apache-2.0

#include "phasefit/model.hpp"

namespace phasefit {

namespace {

bool is_pow2(int v) { return v >= 1 && (v & (v - 1)) == 0; }

ValidationResult fail(std::string msg) { return {false, std::move(msg)}; }

} // namespace

ValidationResult validate(const OfdmParams& params, const PilotGeometry& geometry) {
    if (params.n < 2 || !is_pow2(params.n))
        return fail("n must be a power of two and >= 2");
    if (params.cp_len < 0)
        return fail("cp_len must be >= 0");
    if (params.cp_len >= params.n)
        return fail("cp_len < n violated");
    if (params.l_symbols < 1)
        return fail("l_symbols must be >= 1");
    if (geometry.delta_t < 1)
        return fail("delta_t must be >= 1");
    if (geometry.n_p < 1)
        return fail("n_p must be >= 1");
    if ((geometry.n_p - 1) * geometry.delta_t >= params.n)
        return fail("pilot indices exceed symbol: (n_p-1)*delta_t must be < n");
    if (geometry.x1 < 1)
        return fail("x1 must be >= 1");
    if (geometry.y2 < 1)
        return fail("y2 must be >= 1");
    if (geometry.y2 > params.n)
        return fail("y2 must be <= n");
    return {};
}

std::vector<int> pilot_time_indices(const PilotGeometry& geometry) {
    std::vector<int> idx(static_cast<size_t>(geometry.n_p));
    for (int k = 0; k < geometry.n_p; ++k)
        idx[static_cast<size_t>(k)] = k * geometry.delta_t;
    return idx;
}

} // namespace phasefit
