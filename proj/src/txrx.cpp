// SPDX-License-Identifier: Apache-2.0

#include "phasefit/txrx.hpp"

#include <numbers>
#include <stdexcept>

#include "phasefit/fft.hpp"
#include "phasefit/rng.hpp"

namespace phasefit {

namespace {

void check_grid(const FreqGrid& grid, const OfdmParams& params) {
    for (const auto& row : grid.symbols)
        if (static_cast<int>(row.size()) != params.n)
            throw std::invalid_argument("grid row length does not match n");
}

} // namespace

TimeFrame modulate_frame(const FreqGrid& grid, const OfdmParams& params) {
    check_grid(grid, params);
    TimeFrame frame;
    frame.cp_len = params.cp_len;
    frame.has_cp = params.cp_len > 0;
    frame.symbols.reserve(grid.symbols.size());
    for (const auto& row : grid.symbols) {
        std::vector<cplx> body = idft_unitary(row);
        std::vector<cplx> sym(static_cast<size_t>(params.cp_len) + body.size());
        for (int i = 0; i < params.cp_len; ++i)
            sym[static_cast<size_t>(i)] = body[body.size() - static_cast<size_t>(params.cp_len) + static_cast<size_t>(i)];
        std::copy(body.begin(), body.end(), sym.begin() + params.cp_len);
        frame.symbols.push_back(std::move(sym));
    }
    return frame;
}

FreqGrid demodulate_frame(const TimeFrame& frame, const OfdmParams& params) {
    const size_t body_start = static_cast<size_t>(frame.body_offset());
    FreqGrid grid;
    grid.symbols.reserve(frame.symbols.size());
    for (const auto& sym : frame.symbols) {
        if (sym.size() != body_start + static_cast<size_t>(params.n))
            throw std::invalid_argument("frame symbol length does not match cp_len + n");
        std::span<const cplx> body(sym.data() + body_start, static_cast<size_t>(params.n));
        grid.symbols.push_back(dft_unitary(body));
    }
    return grid;
}

FreqGrid random_grid(const OfdmParams& params, const ConstellationSpec& constellation, std::uint64_t seed) {
    Rng rng(seed);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    FreqGrid grid;
    grid.known_symbols = constellation.known_symbols;
    grid.symbols.assign(static_cast<size_t>(params.l_symbols),
                        std::vector<cplx>(static_cast<size_t>(params.n)));
    for (auto& row : grid.symbols) {
        for (auto& cell : row) {
            switch (constellation.kind) {
            case ConstellationKind::qpsk: {
                std::uint64_t bits = rng.next_u64();
                double re = (bits & 1) ? inv_sqrt2 : -inv_sqrt2;
                double im = (bits & 2) ? inv_sqrt2 : -inv_sqrt2;
                cell = {re, im};
                break;
            }
            case ConstellationKind::bpsk:
                cell = (rng.next_u64() & 1) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
                break;
            case ConstellationKind::known_unit:
                cell = {1.0, 0.0};
                break;
            }
        }
    }
    return grid;
}

} // namespace phasefit
