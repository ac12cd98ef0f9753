// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace phasefit {

using cplx = std::complex<double>;

/// Pilot lattice families over the symbol/subcarrier grid.
enum class PatternKind { block, comb, rectangular, hexagonal, parallelogram, diamond };

/// Static dimensions of the OFDM link.
struct OfdmParams {
    int n = 64;        // subcarriers (= samples per symbol body), power of two
    int cp_len = 16;   // cyclic-prefix length in samples, < n
    int l_symbols = 1; // symbols per frame
};

/// Pilot lattice description: intra-symbol sample spacing plus the
/// symbol/subcarrier intervals of the time-frequency lattice.
struct PilotGeometry {
    int delta_t = 8;                                 // sample spacing of pilot observations
    int n_p = 8;                                     // pilot observations per pilot-bearing symbol
    PatternKind pattern = PatternKind::rectangular;  // lattice family
    int x1 = 8;                                      // symbol-domain pilot interval
    int y2 = 8;                                      // subcarrier-domain pilot interval
};

/// Frequency-domain frame content: one row of n complex values per symbol.
struct FreqGrid {
    std::vector<std::vector<cplx>> symbols;
    std::vector<int> known_symbols; // rows whose content the receiver knows (pilot-bearing)
};

/// Time-domain frame as seen on the air interface. Each row holds
/// cp_len + n samples when has_cp is set, n samples otherwise.
struct TimeFrame {
    std::vector<std::vector<cplx>> symbols;
    int cp_len = 0;
    bool has_cp = false;

    int body_offset() const { return has_cp ? cp_len : 0; }
};

/// Per-symbol estimator outputs.
struct EstimateRecord {
    int symbol_index = 0;
    double epsilon_hat = 0.0; // normalized frequency offset estimate
    double c_hat = 0.0;       // fitted phase intercept, radians
    double phn_hat = 0.0;     // per-symbol phase-noise estimate, radians
};

/// Outcome of a joint parameter check; message names the violated constraint.
struct ValidationResult {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

ValidationResult validate(const OfdmParams& params, const PilotGeometry& geometry);

/// Sample indices of the pilot observations within one symbol body:
/// k * delta_t for k = 0 .. n_p-1.
std::vector<int> pilot_time_indices(const PilotGeometry& geometry);

} // namespace phasefit
