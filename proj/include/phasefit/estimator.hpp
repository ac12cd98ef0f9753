// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "phasefit/model.hpp"
#include "phasefit/pilots.hpp"

namespace phasefit {

/// paper: take raw sample phases, treating the modulated-signal phase as a
/// zero-mean disturbance. known_signal: subtract the exactly computed
/// signal phase using the transmitted grid and realized channel, isolating
/// the impairment phase.
enum class PhaseMode { paper, known_signal };

/// Transmitter-side knowledge for known_signal mode. `channel` may be
/// null for an identity channel.
struct KnownSignal {
    const FreqGrid* grid = nullptr;
    const std::vector<std::vector<cplx>>* channel = nullptr;
};

/// Phase observations theta(i) at body samples i*delta_t of one symbol.
struct PhaseSeries {
    std::vector<double> theta;
    int symbol_index = 0;
    PilotGeometry geometry;
    bool unwrapped = false;
};

/// Fitted line theta(i) ~ a_hat * i + c_hat over the pilot index.
struct RegressionFit {
    double a_hat = 0.0; // radians per pilot index
    double c_hat = 0.0; // radians
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

PhaseSeries extract_phase_series(const TimeFrame& frame, int symbol_index, const PilotGeometry& geometry,
                                 PhaseMode mode, const KnownSignal* known = nullptr);

/// Classic phase unwrap: whenever a consecutive difference leaves
/// (-pi, pi], all subsequent values are shifted by the correcting
/// multiple of 2 pi. First value unchanged.
PhaseSeries unwrap(PhaseSeries series);

/// Phase-sum estimator: eps = n * sum(theta) / (pi * n_p * (delta_t*(n_p-1) + 2*l*n)).
/// Undefined for n_p = 1 on symbol 0 (zero denominator).
double estimate_cfo_sum(const PhaseSeries& series, int symbol_index, const PilotGeometry& geometry,
                        const OfdmParams& params);

/// Closed-form least-squares line fit over indices 0..n_p-1.
RegressionFit fit_phase_line(const PhaseSeries& series);

/// Independent check: explicit 2x2 normal-equation solve of the same
/// least-squares problem.
RegressionFit ls_oracle(const PhaseSeries& series);

/// eps = a_hat * n / (2 pi delta_t). The symbol index plays no role: the
/// accumulated inter-symbol phase lives in the intercept.
double estimate_cfo_regression(const PhaseSeries& series, const PilotGeometry& geometry, const OfdmParams& params);

/// Phase-noise split: phn = c_hat - 2 pi eps_hat * l.
double estimate_phn(const RegressionFit& fit, double epsilon_hat, int symbol_index);

/// Algebraically equivalent split written over the series mean:
/// phn = mean(theta) - pi * eps_hat * (2l + (n_p-1) delta_t / n).
/// Equal to estimate_phn whenever eps_hat derives from the same fit.
double estimate_phn_expanded(const RegressionFit& fit, double epsilon_hat, int symbol_index,
                             const PilotGeometry& geometry, const OfdmParams& params);

/// Linear interpolation of the CFO estimate onto a symbol delta steps
/// after the pilot-bearing symbol l, with the next pilot x1 steps ahead.
double interpolate_cfo(double eps_l, double eps_l_plus_x1, int delta, int x1);

/// Three-tap smoothing (eps_l + gamma*eps_{l-1} + gamma*eps_{l+1}) / (1+2*gamma);
/// boundaries renormalize over the available neighbors.
std::vector<double> smooth_cfo(std::span<const double> eps_sequence, double gamma);

/// Conjugate-correlation baseline over two transmissions of the same
/// symbol: eps = arg(sum b * conj(a)) / (2 pi). Unambiguous for |eps| < 1/2.
double estimate_cfo_moose(std::span<const cplx> sym_a, std::span<const cplx> sym_b);

/// Full-frame estimation: direct regression on every pilot-bearing
/// symbol, linear interpolation on the symbols between them (edges hold
/// the nearest direct estimate), optional smoothing pass when gamma > 0.
std::vector<EstimateRecord> estimate_frame(const TimeFrame& frame, const PilotLattice& lattice,
                                           const PilotGeometry& geometry, const OfdmParams& params, PhaseMode mode,
                                           const KnownSignal* known = nullptr, double gamma = 0.0);

} // namespace phasefit
