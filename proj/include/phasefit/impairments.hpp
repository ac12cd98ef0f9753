// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "phasefit/model.hpp"

namespace phasefit {

enum class ChannelKind { identity, static_taps, block_rayleigh };

/// Channel description. `taps` is the complex impulse response for
/// static_taps; for block_rayleigh its squared magnitudes act as the
/// per-tap power template (normalized to unit total power internally).
/// The sampled densities feed spectrum_moment4 only; the fading
/// simulator itself is a first-order autoregressive block model.
struct ChannelModel {
    ChannelKind kind = ChannelKind::identity;
    std::vector<cplx> taps{cplx{1.0, 0.0}};
    std::vector<double> doppler_spectrum; // S(w) over a uniform grid on [-pi, pi]
    std::vector<double> power_profile;    // likewise, delay-domain density
    double rho = 0.9;                     // symbol-to-symbol fading correlation
};

/// True impairment values for one frame plus the realized phase-noise
/// trajectory (filled in by apply_phn when absent).
struct ImpairmentState {
    double epsilon = 0.0;     // normalized CFO, cycles per symbol body
    double phn_sigma2 = 0.0;  // Wiener increment variance, rad^2
    std::vector<double> phn_trajectory;
    double snr_db = std::numeric_limits<double>::infinity();
    ChannelModel channel;
};

/// Nonempty warning text when |epsilon| >= n/(2*delta_t), i.e. the pilot
/// phase advances by half a cycle or more between observations and the
/// estimators alias. Not an error: simulation stays well defined.
std::string estimability_warning(double epsilon, const OfdmParams& params, const PilotGeometry& geometry);

/// Rotates sample n of symbol l by e^{j 2 pi epsilon (n + l n_total) / n},
/// where n counts body samples and CP samples carry the continuation
/// values n in [-cp_len, 0). Magnitudes are untouched.
TimeFrame apply_cfo(TimeFrame frame, double epsilon, const OfdmParams& params);

/// Rotates every sample of symbol l by the symbol-constant angle
/// phi(l). If state.phn_trajectory is empty, a Wiener walk
/// phi(l) = phi(l-1) + N(0, phn_sigma2), phi(-1) = 0, is drawn from seed
/// and stored in state.
TimeFrame apply_phn(TimeFrame frame, ImpairmentState& state, std::uint64_t seed);

/// Adds circular complex Gaussian noise with per-sample variance
/// mean_power / 10^(snr_db/10), mean power measured over the frame.
/// snr_db = +inf returns the frame unchanged.
TimeFrame apply_awgn(TimeFrame frame, double snr_db, std::uint64_t seed);

struct ChannelOutput {
    FreqGrid grid;
    std::vector<std::vector<cplx>> h; // realized frequency response per symbol
};

/// Per-subcarrier multiplication by the channel frequency response.
/// Returns the realized response so known-signal estimation can divide
/// it back out.
ChannelOutput apply_channel(const FreqGrid& grid, const ChannelModel& channel, const OfdmParams& params,
                            std::uint64_t seed);

/// Fourth moment (1/2pi) * integral of w^4 S(w) dw over [-pi, pi] by the
/// trapezoid rule. The samples must form a density: at least 4096 points,
/// nonnegative, with (1/2pi) * integral of S within 1e-3 of one.
double spectrum_moment4(std::span<const double> spectrum);

} // namespace phasefit
