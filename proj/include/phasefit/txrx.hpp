// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "phasefit/model.hpp"

namespace phasefit {

enum class ConstellationKind { qpsk, bpsk, known_unit };

struct ConstellationSpec {
    ConstellationKind kind = ConstellationKind::qpsk;
    std::vector<int> known_symbols; // rows to record in FreqGrid::known_symbols
};

/// Unitary inverse DFT of every symbol row, then cyclic-prefix insertion:
/// the last cp_len body samples are copied in front of the body.
TimeFrame modulate_frame(const FreqGrid& grid, const OfdmParams& params);

/// Cyclic-prefix removal followed by the unitary forward DFT per symbol.
/// Exact inverse of modulate_frame in the absence of impairments.
FreqGrid demodulate_frame(const TimeFrame& frame, const OfdmParams& params);

/// Frame of i.i.d. unit-energy constellation points, reproducible from seed.
FreqGrid random_grid(const OfdmParams& params, const ConstellationSpec& constellation, std::uint64_t seed);

} // namespace phasefit
