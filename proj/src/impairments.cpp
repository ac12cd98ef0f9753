// SPDX-License-Identifier: Apache-2.0

#include "phasefit/impairments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "phasefit/fft.hpp"
#include "phasefit/rng.hpp"

namespace phasefit {

std::string estimability_warning(double epsilon, const OfdmParams& params, const PilotGeometry& geometry) {
    const double limit = static_cast<double>(params.n) / (2.0 * geometry.delta_t);
    if (std::abs(epsilon) < limit)
        return {};
    std::ostringstream os;
    os << "epsilon magnitude " << std::abs(epsilon) << " reaches the aliasing limit n/(2*delta_t) = " << limit
       << "; phase-slope estimates will wrap";
    return os.str();
}

TimeFrame apply_cfo(TimeFrame frame, double epsilon, const OfdmParams& params) {
    const double w = 2.0 * std::numbers::pi * epsilon / static_cast<double>(params.n);
    const int offset = frame.body_offset();
    for (size_t l = 0; l < frame.symbols.size(); ++l) {
        auto& sym = frame.symbols[l];
        for (size_t s = 0; s < sym.size(); ++s) {
            // body sample counter; CP samples sit at negative positions
            const double counter =
                static_cast<double>(static_cast<long long>(s) - offset) + static_cast<double>(l) * params.n;
            sym[s] *= cplx{std::cos(w * counter), std::sin(w * counter)};
        }
    }
    return frame;
}

TimeFrame apply_phn(TimeFrame frame, ImpairmentState& state, std::uint64_t seed) {
    if (state.phn_trajectory.empty()) {
        Rng rng(seed);
        state.phn_trajectory.resize(frame.symbols.size());
        double phi = 0.0;
        const double sigma = std::sqrt(state.phn_sigma2);
        for (double& v : state.phn_trajectory) {
            phi += sigma * rng.gaussian();
            v = phi;
        }
    }
    if (state.phn_trajectory.size() < frame.symbols.size())
        throw std::invalid_argument("phase-noise trajectory shorter than frame");
    for (size_t l = 0; l < frame.symbols.size(); ++l) {
        const cplx rot{std::cos(state.phn_trajectory[l]), std::sin(state.phn_trajectory[l])};
        for (auto& v : frame.symbols[l])
            v *= rot;
    }
    return frame;
}

TimeFrame apply_awgn(TimeFrame frame, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0)
        return frame;
    double power = 0.0;
    size_t count = 0;
    for (const auto& sym : frame.symbols) {
        for (const auto& v : sym)
            power += std::norm(v);
        count += sym.size();
    }
    if (count == 0 || power == 0.0)
        throw std::invalid_argument("undefined signal power: zero-power frame with finite SNR");
    power /= static_cast<double>(count);
    const double variance = power / std::pow(10.0, snr_db / 10.0);
    Rng rng(seed);
    for (auto& sym : frame.symbols)
        for (auto& v : sym)
            v += rng.circular_gaussian(variance);
    return frame;
}

namespace {

std::vector<cplx> response_from_taps(std::span<const cplx> taps, int n) {
    // unscaled DFT of the zero-padded impulse response
    std::vector<cplx> h(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (size_t m = 0; m < taps.size(); ++m) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(m) / n;
            acc += taps[m] * cplx{std::cos(ang), std::sin(ang)};
        }
        h[static_cast<size_t>(k)] = acc;
    }
    return h;
}

} // namespace

ChannelOutput apply_channel(const FreqGrid& grid, const ChannelModel& channel, const OfdmParams& params,
                            std::uint64_t seed) {
    ChannelOutput out;
    out.grid = grid;
    const size_t rows = grid.symbols.size();
    const size_t n = static_cast<size_t>(params.n);
    out.h.assign(rows, std::vector<cplx>(n, cplx{1.0, 0.0}));
    if (channel.kind == ChannelKind::identity)
        return out;

    if (channel.taps.empty())
        throw std::invalid_argument("channel taps must be nonempty");
    if (static_cast<int>(channel.taps.size()) > params.cp_len)
        throw std::invalid_argument("taps longer than cp_len");

    if (channel.kind == ChannelKind::static_taps) {
        const std::vector<cplx> h = response_from_taps(channel.taps, params.n);
        for (size_t l = 0; l < rows; ++l) {
            out.h[l] = h;
            for (size_t k = 0; k < n; ++k)
                out.grid.symbols[l][k] *= h[k];
        }
        return out;
    }

    // block_rayleigh: per-tap AR(1) process with the squared tap magnitudes
    // as a power template, normalized to unit total power
    double total = 0.0;
    for (const auto& t : channel.taps)
        total += std::norm(t);
    if (total == 0.0)
        throw std::invalid_argument("channel tap power template is all zero");
    std::vector<double> tap_sigma(channel.taps.size());
    for (size_t m = 0; m < channel.taps.size(); ++m)
        tap_sigma[m] = std::norm(channel.taps[m]) / total;

    const double rho = channel.rho;
    if (rho < 0.0 || rho >= 1.0)
        throw std::invalid_argument("fading correlation rho must lie in [0, 1)");

    Rng rng(seed);
    std::vector<cplx> taps(channel.taps.size());
    const double innov = std::sqrt(1.0 - rho * rho);
    for (size_t l = 0; l < rows; ++l) {
        for (size_t m = 0; m < taps.size(); ++m) {
            const cplx draw = rng.circular_gaussian(tap_sigma[m]);
            taps[m] = (l == 0) ? draw : rho * taps[m] + innov * draw;
        }
        out.h[l] = response_from_taps(taps, params.n);
        for (size_t k = 0; k < n; ++k)
            out.grid.symbols[l][k] *= out.h[l][k];
    }
    return out;
}

double spectrum_moment4(std::span<const double> spectrum) {
    const size_t m = spectrum.size();
    if (m < 4096)
        throw std::invalid_argument("spectrum needs at least 4096 grid points");
    for (double s : spectrum)
        if (s < 0.0)
            throw std::invalid_argument("spectrum density must be nonnegative");
    const double h = 2.0 * std::numbers::pi / static_cast<double>(m - 1);
    double mass = 0.0;
    double moment = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double w = -std::numbers::pi + h * static_cast<double>(i);
        const double weight = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
        mass += weight * spectrum[i];
        moment += weight * spectrum[i] * w * w * w * w;
    }
    const double scale = h / (2.0 * std::numbers::pi);
    if (std::abs(mass * scale - 1.0) > 1e-3)
        throw std::invalid_argument("spectrum density is not normalized: (1/2pi) * integral must be 1");
    return moment * scale;
}

} // namespace phasefit
