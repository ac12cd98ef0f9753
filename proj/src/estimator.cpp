// SPDX-License-Identifier: Apache-2.0

#include "phasefit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "phasefit/fft.hpp"

namespace phasefit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_points(const PhaseSeries& series, size_t minimum, const char* what) {
    if (series.theta.size() < minimum)
        throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(minimum) +
                                    " phase values");
}

} // namespace

double wrap_angle(double x) {
    double y = std::remainder(x, two_pi); // lands in [-pi, pi]
    if (y <= -std::numbers::pi)
        y += two_pi;
    return y;
}

PhaseSeries extract_phase_series(const TimeFrame& frame, int symbol_index, const PilotGeometry& geometry,
                                 PhaseMode mode, const KnownSignal* known) {
    if (symbol_index < 0 || static_cast<size_t>(symbol_index) >= frame.symbols.size())
        throw std::invalid_argument("symbol index out of range");
    const auto& sym = frame.symbols[static_cast<size_t>(symbol_index)];
    const size_t body_start = static_cast<size_t>(frame.body_offset());
    const size_t body_len = sym.size() - body_start;

    std::vector<cplx> reference;
    if (mode == PhaseMode::known_signal) {
        if (known == nullptr || known->grid == nullptr)
            throw std::invalid_argument("known_signal mode requires the transmitted grid");
        const auto& row = known->grid->symbols.at(static_cast<size_t>(symbol_index));
        if (row.size() != body_len)
            throw std::invalid_argument("known grid row length does not match symbol body");
        if (known->channel != nullptr) {
            const auto& h = known->channel->at(static_cast<size_t>(symbol_index));
            if (h.size() != body_len)
                throw std::invalid_argument("known channel row length does not match symbol body");
            std::vector<cplx> faded(body_len);
            for (size_t k = 0; k < body_len; ++k)
                faded[k] = row[k] * h[k];
            reference = idft_unitary(faded);
        } else {
            reference = idft_unitary(row);
        }
    }

    PhaseSeries series;
    series.symbol_index = symbol_index;
    series.geometry = geometry;
    series.theta.resize(static_cast<size_t>(geometry.n_p));
    for (int i = 0; i < geometry.n_p; ++i) {
        const size_t idx = static_cast<size_t>(i) * static_cast<size_t>(geometry.delta_t);
        if (idx >= body_len)
            throw std::invalid_argument("pilot indices exceed symbol: index " + std::to_string(idx));
        const cplx z = sym[body_start + idx];
        if (z == cplx{0.0, 0.0})
            throw std::runtime_error("phase undefined: exact-zero sample at index " + std::to_string(idx));
        double theta = std::arg(z);
        if (mode == PhaseMode::known_signal) {
            const cplx ref = reference[idx];
            if (ref == cplx{0.0, 0.0})
                throw std::runtime_error("phase undefined: exact-zero reference at index " + std::to_string(idx));
            theta = wrap_angle(theta - std::arg(ref));
        }
        series.theta[static_cast<size_t>(i)] = theta;
    }
    return series;
}

PhaseSeries unwrap(PhaseSeries series) {
    require_points(series, 1, "unwrap");
    double correction = 0.0;
    double prev_raw = series.theta[0];
    for (size_t i = 1; i < series.theta.size(); ++i) {
        const double raw = series.theta[i];
        const double step = raw - prev_raw;
        correction += wrap_angle(step) - step;
        prev_raw = raw;
        series.theta[i] = raw + correction;
    }
    series.unwrapped = true;
    return series;
}

double estimate_cfo_sum(const PhaseSeries& series, int symbol_index, const PilotGeometry& geometry,
                        const OfdmParams& params) {
    require_points(series, 1, "sum estimator");
    const int n_p = static_cast<int>(series.theta.size());
    if (n_p == 1 && symbol_index == 0)
        throw std::invalid_argument("estimator undefined: single pilot on symbol 0 gives zero denominator");
    double sum = 0.0;
    for (double t : series.theta)
        sum += t;
    const double denom = std::numbers::pi * n_p *
                         (static_cast<double>(geometry.delta_t) * (n_p - 1) +
                          2.0 * static_cast<double>(symbol_index) * params.n);
    return static_cast<double>(params.n) * sum / denom;
}

RegressionFit fit_phase_line(const PhaseSeries& series) {
    require_points(series, 2, "line fit");
    const double n_p = static_cast<double>(series.theta.size());
    double s0 = 0.0;
    double s1 = 0.0;
    for (size_t i = 0; i < series.theta.size(); ++i) {
        s0 += series.theta[i];
        s1 += static_cast<double>(i) * series.theta[i];
    }
    RegressionFit fit;
    fit.a_hat = 12.0 / ((n_p - 1.0) * n_p * (n_p + 1.0)) * (s1 - 0.5 * (n_p - 1.0) * s0);
    fit.c_hat = s0 / n_p - 0.5 * (n_p - 1.0) * fit.a_hat;
    return fit;
}

RegressionFit ls_oracle(const PhaseSeries& series) {
    require_points(series, 2, "normal-equation solve");
    const double n_p = static_cast<double>(series.theta.size());
    double sx = 0.0;
    double sxx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    for (size_t i = 0; i < series.theta.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sxx += x * x;
        sy += series.theta[i];
        sxy += x * series.theta[i];
    }
    const double det = sxx * n_p - sx * sx;
    if (det == 0.0)
        throw std::invalid_argument("singular normal equations");
    RegressionFit fit;
    fit.a_hat = (sxy * n_p - sx * sy) / det;
    fit.c_hat = (sxx * sy - sx * sxy) / det;
    return fit;
}

double estimate_cfo_regression(const PhaseSeries& series, const PilotGeometry& geometry, const OfdmParams& params) {
    const RegressionFit fit = fit_phase_line(series);
    return fit.a_hat * static_cast<double>(params.n) / (two_pi * static_cast<double>(geometry.delta_t));
}

double estimate_phn(const RegressionFit& fit, double epsilon_hat, int symbol_index) {
    return fit.c_hat - two_pi * epsilon_hat * static_cast<double>(symbol_index);
}

double estimate_phn_expanded(const RegressionFit& fit, double epsilon_hat, int symbol_index,
                             const PilotGeometry& geometry, const OfdmParams& params) {
    // series mean recovered from the fit: mean = c_hat + ((n_p-1)/2) a_hat
    const double n_p = static_cast<double>(geometry.n_p);
    const double mean = fit.c_hat + 0.5 * (n_p - 1.0) * fit.a_hat;
    return mean - std::numbers::pi * epsilon_hat *
                      (2.0 * static_cast<double>(symbol_index) +
                       (n_p - 1.0) * static_cast<double>(geometry.delta_t) / static_cast<double>(params.n));
}

double interpolate_cfo(double eps_l, double eps_l_plus_x1, int delta, int x1) {
    if (delta <= 0 || delta >= x1)
        throw std::invalid_argument("delta must lie strictly between 0 and x1");
    const double w = static_cast<double>(delta) / static_cast<double>(x1);
    return (1.0 - w) * eps_l + w * eps_l_plus_x1;
}

std::vector<double> smooth_cfo(std::span<const double> eps_sequence, double gamma) {
    if (eps_sequence.empty())
        throw std::invalid_argument("cannot smooth an empty sequence");
    if (gamma < 0.0)
        throw std::invalid_argument("gamma must be >= 0");
    const size_t n = eps_sequence.size();
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        double acc = eps_sequence[i];
        double weight = 1.0;
        if (i > 0) {
            acc += gamma * eps_sequence[i - 1];
            weight += gamma;
        }
        if (i + 1 < n) {
            acc += gamma * eps_sequence[i + 1];
            weight += gamma;
        }
        out[i] = acc / weight;
    }
    return out;
}

double estimate_cfo_moose(std::span<const cplx> sym_a, std::span<const cplx> sym_b) {
    if (sym_a.size() != sym_b.size() || sym_a.empty())
        throw std::invalid_argument("correlation needs two equal-length nonempty symbols");
    cplx corr{0.0, 0.0};
    for (size_t i = 0; i < sym_a.size(); ++i)
        corr += sym_b[i] * std::conj(sym_a[i]);
    if (corr == cplx{0.0, 0.0})
        throw std::runtime_error("zero correlation magnitude");
    return std::arg(corr) / two_pi;
}

std::vector<EstimateRecord> estimate_frame(const TimeFrame& frame, const PilotLattice& lattice,
                                           const PilotGeometry& geometry, const OfdmParams& params, PhaseMode mode,
                                           const KnownSignal* known, double gamma) {
    const int l_total = static_cast<int>(frame.symbols.size());
    std::vector<int> pilots;
    for (int l : pilot_bearing_symbols(lattice))
        if (l < l_total)
            pilots.push_back(l);
    if (pilots.empty())
        throw std::invalid_argument("no pilot-bearing symbols in lattice");

    struct Direct {
        double eps;
        double phn;
    };
    std::vector<Direct> direct(pilots.size());
    for (size_t p = 0; p < pilots.size(); ++p) {
        const PhaseSeries series = unwrap(extract_phase_series(frame, pilots[p], geometry, mode, known));
        const RegressionFit fit = fit_phase_line(series);
        const double eps = fit.a_hat * params.n / (two_pi * geometry.delta_t);
        direct[p] = {eps, estimate_phn(fit, eps, pilots[p])};
    }

    std::vector<EstimateRecord> records(static_cast<size_t>(l_total));
    size_t next = 0; // first pilot with index >= l
    for (int l = 0; l < l_total; ++l) {
        while (next < pilots.size() && pilots[next] < l)
            ++next;
        EstimateRecord rec;
        rec.symbol_index = l;
        if (next < pilots.size() && pilots[next] == l) {
            rec.epsilon_hat = direct[next].eps;
            rec.phn_hat = direct[next].phn;
        } else if (next == 0) {
            rec.epsilon_hat = direct.front().eps; // before the first pilot: hold
            rec.phn_hat = direct.front().phn;
        } else if (next == pilots.size()) {
            rec.epsilon_hat = direct.back().eps; // after the last pilot: hold
            rec.phn_hat = direct.back().phn;
        } else {
            const int span = pilots[next] - pilots[next - 1];
            const int delta = l - pilots[next - 1];
            rec.epsilon_hat = interpolate_cfo(direct[next - 1].eps, direct[next].eps, delta, span);
            rec.phn_hat = interpolate_cfo(direct[next - 1].phn, direct[next].phn, delta, span);
        }
        rec.c_hat = two_pi * rec.epsilon_hat * l + rec.phn_hat;
        records[static_cast<size_t>(l)] = rec;
    }

    if (gamma > 0.0) {
        std::vector<double> eps(records.size());
        for (size_t i = 0; i < records.size(); ++i)
            eps[i] = records[i].epsilon_hat;
        const std::vector<double> smoothed = smooth_cfo(eps, gamma);
        for (size_t i = 0; i < records.size(); ++i) {
            records[i].epsilon_hat = smoothed[i];
            records[i].c_hat = two_pi * records[i].epsilon_hat * records[i].symbol_index + records[i].phn_hat;
        }
    }
    return records;
}

} // namespace phasefit
