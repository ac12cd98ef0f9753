// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phasefit/fft.hpp"
#include "phasefit/impairments.hpp"
#include "phasefit/rng.hpp"
#include "phasefit/txrx.hpp"
#include "test_util.hpp"

using namespace phasefit;

namespace {

TimeFrame ones_frame(int l_symbols, int cp_len, int n) {
    TimeFrame frame;
    frame.cp_len = cp_len;
    frame.has_cp = cp_len > 0;
    frame.symbols.assign(static_cast<size_t>(l_symbols),
                         std::vector<cplx>(static_cast<size_t>(cp_len + n), cplx{1.0, 0.0}));
    return frame;
}

TimeFrame random_frame(int l_symbols, int cp_len, int n, std::uint64_t seed) {
    Rng rng(seed);
    TimeFrame frame = ones_frame(l_symbols, cp_len, n);
    for (auto& sym : frame.symbols)
        for (auto& v : sym)
            v = {rng.gaussian(), rng.gaussian()};
    return frame;
}

} // namespace

TEST_CASE("zero offset leaves the frame untouched") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 0;
    const TimeFrame frame = random_frame(2, 0, 8, 1);
    const TimeFrame rotated = apply_cfo(frame, 0.0, params);
    for (size_t l = 0; l < 2; ++l)
        CHECK(testutil::max_abs_diff(frame.symbols[l], rotated.symbols[l]) == 0.0);
}

TEST_CASE("offset of one full bin flips the mid-body sample") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 0;
    params.l_symbols = 1;
    const TimeFrame rotated = apply_cfo(ones_frame(1, 0, 8), 1.0, params);
    // sample n = N/2: e^{j 2 pi * 1 * 4 / 8} = -1
    CHECK(rotated.symbols[0][4].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(rotated.symbols[0][4].imag()) < 1e-12);
}

TEST_CASE("half-bin offset flips the start of the second symbol") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 0;
    params.l_symbols = 2;
    const TimeFrame rotated = apply_cfo(ones_frame(2, 0, 8), 0.5, params);
    // symbol l=1, body sample 0: phase 2 pi * 0.5 * 8/8 = pi
    CHECK(rotated.symbols[1][0].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(rotated.symbols[1][0].imag()) < 1e-12);
}

TEST_CASE("cyclic prefix samples continue the body phase backwards") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 2;
    params.l_symbols = 1;
    const double epsilon = 0.3;
    const TimeFrame rotated = apply_cfo(ones_frame(1, 2, 8), epsilon, params);
    const double expected = -2.0 * 2.0 * std::numbers::pi * epsilon / 8.0; // counter -cp_len
    CHECK(std::arg(rotated.symbols[0][0]) == doctest::Approx(expected).epsilon(1e-12));
    // body start carries counter 0
    CHECK(std::arg(rotated.symbols[0][2]) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("offsets add and compensate") {
    OfdmParams params;
    params.n = 16;
    params.cp_len = 4;
    const TimeFrame frame = random_frame(3, 4, 16, 2);
    const TimeFrame once = apply_cfo(apply_cfo(frame, 0.17, params), -0.05, params);
    const TimeFrame direct = apply_cfo(frame, 0.12, params);
    for (size_t l = 0; l < 3; ++l)
        CHECK(testutil::max_abs_diff(once.symbols[l], direct.symbols[l]) < 1e-12);

    const TimeFrame back = apply_cfo(apply_cfo(frame, 0.31, params), -0.31, params);
    for (size_t l = 0; l < 3; ++l)
        CHECK(testutil::max_abs_diff(back.symbols[l], frame.symbols[l]) < 1e-12);
}

TEST_CASE("offset rotation preserves magnitudes exactly") {
    OfdmParams params;
    params.n = 16;
    params.cp_len = 0;
    const TimeFrame frame = random_frame(1, 0, 16, 3);
    const TimeFrame rotated = apply_cfo(frame, 0.23, params);
    for (size_t i = 0; i < 16; ++i)
        CHECK(std::abs(rotated.symbols[0][i]) == doctest::Approx(std::abs(frame.symbols[0][i])).epsilon(1e-14));
}

TEST_CASE("zero-variance phase noise is the identity with an all-zero trajectory") {
    ImpairmentState state;
    state.phn_sigma2 = 0.0;
    const TimeFrame frame = random_frame(4, 2, 8, 4);
    const TimeFrame out = apply_phn(frame, state, 9);
    REQUIRE(state.phn_trajectory.size() == 4);
    for (double v : state.phn_trajectory)
        CHECK(v == 0.0);
    for (size_t l = 0; l < 4; ++l)
        CHECK(testutil::max_abs_diff(frame.symbols[l], out.symbols[l]) == 0.0);
}

TEST_CASE("a preset trajectory rotates each symbol by its own angle") {
    ImpairmentState state;
    state.phn_trajectory = {0.1};
    const TimeFrame out = apply_phn(ones_frame(1, 0, 4), state, 0);
    for (size_t i = 0; i < 4; ++i)
        CHECK(std::arg(out.symbols[0][i]) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("trajectory shorter than the frame is rejected") {
    ImpairmentState state;
    state.phn_trajectory = {0.1};
    CHECK_THROWS_AS((void)apply_phn(ones_frame(2, 0, 4), state, 0), std::invalid_argument);
}

TEST_CASE("random-walk variance grows linearly with the symbol index") {
    const int realizations = 10000;
    const double sigma2 = 0.01;
    const int l_probe = 4;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int r = 0; r < realizations; ++r) {
        ImpairmentState state;
        state.phn_sigma2 = sigma2;
        TimeFrame frame = ones_frame(l_probe + 1, 0, 2);
        (void)apply_phn(std::move(frame), state, derive_seed(77, static_cast<std::uint64_t>(r), 0, 0));
        const double phi = state.phn_trajectory[static_cast<size_t>(l_probe)];
        sum += phi;
        sum_sq += phi * phi;
    }
    const double mean = sum / realizations;
    const double var = sum_sq / realizations - mean * mean;
    // walk of l_probe+1 increments
    const double expected = (l_probe + 1) * sigma2;
    CHECK(var == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("phase-noise and offset rotations commute") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 2;
    const TimeFrame frame = random_frame(3, 2, 8, 6);
    ImpairmentState state_a;
    state_a.phn_trajectory = {0.2, -0.4, 1.1};
    ImpairmentState state_b = state_a;
    const TimeFrame ab = apply_phn(apply_cfo(frame, 0.21, params), state_a, 0);
    const TimeFrame ba = apply_cfo(apply_phn(frame, state_b, 0), 0.21, params);
    for (size_t l = 0; l < 3; ++l)
        CHECK(testutil::max_abs_diff(ab.symbols[l], ba.symbols[l]) < 1e-12);
}

TEST_CASE("infinite SNR is a no-op sentinel") {
    const TimeFrame frame = random_frame(2, 0, 16, 8);
    const TimeFrame out = apply_awgn(frame, std::numeric_limits<double>::infinity(), 1);
    for (size_t l = 0; l < 2; ++l)
        CHECK(testutil::max_abs_diff(frame.symbols[l], out.symbols[l]) == 0.0);
}

TEST_CASE("zero-power frames cannot define an SNR") {
    TimeFrame frame;
    frame.symbols.assign(1, std::vector<cplx>(8, cplx{0.0, 0.0}));
    CHECK_THROWS_WITH_AS((void)apply_awgn(frame, 10.0, 1), doctest::Contains("undefined signal power"),
                         std::invalid_argument);
}

TEST_CASE("noise generation is reproducible per seed") {
    const TimeFrame frame = random_frame(1, 0, 32, 10);
    const TimeFrame a = apply_awgn(frame, 10.0, 5);
    const TimeFrame b = apply_awgn(frame, 10.0, 5);
    const TimeFrame c = apply_awgn(frame, 10.0, 6);
    CHECK(testutil::max_abs_diff(a.symbols[0], b.symbols[0]) == 0.0);
    CHECK(testutil::max_abs_diff(a.symbols[0], c.symbols[0]) > 0.0);
}

TEST_CASE("empirical SNR lands within 0.1 dB of the target") {
    const double target_db = 10.0;
    TimeFrame frame = ones_frame(1000, 0, 1024); // ~1e6 unit-power samples
    const TimeFrame noisy = apply_awgn(frame, target_db, 12345);
    double noise_power = 0.0;
    size_t count = 0;
    for (size_t l = 0; l < frame.symbols.size(); ++l) {
        for (size_t i = 0; i < frame.symbols[l].size(); ++i) {
            noise_power += std::norm(noisy.symbols[l][i] - frame.symbols[l][i]);
            ++count;
        }
    }
    noise_power /= static_cast<double>(count);
    const double measured_db = 10.0 * std::log10(1.0 / noise_power);
    CHECK(measured_db == doctest::Approx(target_db).epsilon(0.01));
    CHECK(std::abs(measured_db - target_db) < 0.1);
}

TEST_CASE("identity channel returns the grid and a flat response") {
    OfdmParams params;
    params.n = 16;
    params.cp_len = 4;
    params.l_symbols = 2;
    const FreqGrid grid = random_grid(params, {ConstellationKind::qpsk, {}}, 3);
    const ChannelOutput out = apply_channel(grid, ChannelModel{}, params, 1);
    for (size_t l = 0; l < 2; ++l) {
        CHECK(testutil::max_abs_diff(grid.symbols[l], out.grid.symbols[l]) == 0.0);
        for (const auto& h : out.h[l])
            CHECK(h == cplx{1.0, 0.0});
    }
}

TEST_CASE("a pure one-sample delay gives the classic phase ramp") {
    OfdmParams params;
    params.n = 4;
    params.cp_len = 2;
    params.l_symbols = 1;
    FreqGrid grid;
    grid.symbols.assign(1, std::vector<cplx>(4, cplx{1.0, 0.0}));
    ChannelModel channel;
    channel.kind = ChannelKind::static_taps;
    channel.taps = {cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    const ChannelOutput out = apply_channel(grid, channel, params, 1);
    for (int k = 0; k < 4; ++k) {
        const double ang = -2.0 * std::numbers::pi * k / 4.0;
        CHECK(out.h[0][static_cast<size_t>(k)].real() == doctest::Approx(std::cos(ang)).epsilon(1e-12));
        CHECK(out.h[0][static_cast<size_t>(k)].imag() == doctest::Approx(std::sin(ang)).epsilon(1e-12));
    }
}

TEST_CASE("frequency-domain products equal circular convolution in time") {
    OfdmParams params;
    params.n = 16;
    params.cp_len = 4;
    params.l_symbols = 1;
    Rng rng(31);
    FreqGrid grid;
    grid.symbols.assign(1, std::vector<cplx>(16));
    for (auto& v : grid.symbols[0])
        v = {rng.gaussian(), rng.gaussian()};
    ChannelModel channel;
    channel.kind = ChannelKind::static_taps;
    channel.taps = {cplx{0.8, 0.1}, cplx{-0.3, 0.2}, cplx{0.05, -0.4}, cplx{0.1, 0.0}};

    const ChannelOutput out = apply_channel(grid, channel, params, 1);
    const std::vector<cplx> via_freq = idft_unitary(out.grid.symbols[0]);
    const std::vector<cplx> via_time = testutil::circular_convolve(idft_unitary(grid.symbols[0]), channel.taps);
    CHECK(testutil::max_abs_diff(via_freq, via_time) < 1e-10);
}

TEST_CASE("channel memory must fit inside the cyclic prefix") {
    OfdmParams params;
    params.n = 16;
    params.cp_len = 2;
    FreqGrid grid;
    grid.symbols.assign(1, std::vector<cplx>(16, cplx{1.0, 0.0}));
    ChannelModel channel;
    channel.kind = ChannelKind::static_taps;
    channel.taps = {cplx{1.0, 0.0}, cplx{0.5, 0.0}, cplx{0.25, 0.0}};
    CHECK_THROWS_WITH_AS((void)apply_channel(grid, channel, params, 1), doctest::Contains("taps longer than cp_len"),
                         std::invalid_argument);
}

TEST_CASE("block fading draws fresh symbol responses with the configured correlation") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 2;
    params.l_symbols = 2;
    FreqGrid grid;
    grid.symbols.assign(2, std::vector<cplx>(8, cplx{1.0, 0.0}));
    ChannelModel channel;
    channel.kind = ChannelKind::block_rayleigh;
    channel.taps = {cplx{1.0, 0.0}};
    channel.rho = 0.7;

    const int trials = 20000;
    double cross_re = 0.0;
    double power0 = 0.0;
    double power1 = 0.0;
    bool symbols_differ = false;
    for (int t = 0; t < trials; ++t) {
        const ChannelOutput out = apply_channel(grid, channel, params, derive_seed(5, static_cast<std::uint64_t>(t), 0, 0));
        const cplx h0 = out.h[0][0];
        const cplx h1 = out.h[1][0];
        symbols_differ = symbols_differ || h0 != h1;
        cross_re += (h1 * std::conj(h0)).real();
        power0 += std::norm(h0);
        power1 += std::norm(h1);
    }
    CHECK(symbols_differ);
    // single unit-power tap: E|H|^2 = 1, E[H1 conj(H0)] = rho
    CHECK(power0 / trials == doctest::Approx(1.0).epsilon(0.05));
    CHECK(power1 / trials == doctest::Approx(1.0).epsilon(0.05));
    CHECK(cross_re / trials == doctest::Approx(0.7).epsilon(0.08));
}

TEST_CASE("block fading is reproducible per seed and validates its inputs") {
    OfdmParams params;
    params.n = 8;
    params.cp_len = 2;
    params.l_symbols = 3;
    FreqGrid grid;
    grid.symbols.assign(3, std::vector<cplx>(8, cplx{1.0, 0.0}));
    ChannelModel channel;
    channel.kind = ChannelKind::block_rayleigh;
    channel.taps = {cplx{1.0, 0.0}, cplx{0.5, 0.0}};

    const ChannelOutput a = apply_channel(grid, channel, params, 77);
    const ChannelOutput b = apply_channel(grid, channel, params, 77);
    for (size_t l = 0; l < 3; ++l)
        CHECK(testutil::max_abs_diff(a.h[l], b.h[l]) == 0.0);

    channel.rho = 1.5;
    CHECK_THROWS_AS((void)apply_channel(grid, channel, params, 1), std::invalid_argument);
    channel.rho = 0.9;
    channel.taps.clear();
    CHECK_THROWS_AS((void)apply_channel(grid, channel, params, 1), std::invalid_argument);
    channel.taps = {cplx{0.0, 0.0}};
    CHECK_THROWS_AS((void)apply_channel(grid, channel, params, 1), std::invalid_argument);
}

TEST_CASE("flat density has fourth moment pi^4/5") {
    const std::vector<double> flat(4097, 1.0);
    const double expected = std::pow(std::numbers::pi, 4) / 5.0;
    CHECK(std::abs(spectrum_moment4(flat) - expected) < 1e-4);
}

TEST_CASE("point masses reproduce closed-form moments") {
    const size_t m = 4097;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(m - 1);

    std::vector<double> at_zero(m, 0.0);
    at_zero[(m - 1) / 2] = 2.0 * std::numbers::pi / h; // unit mass at w = 0
    CHECK(std::abs(spectrum_moment4(at_zero)) < 1e-9);

    std::vector<double> at_half_pi(m, 0.0);
    at_half_pi[(m - 1) / 4] = std::numbers::pi / h;     // w = -pi/2
    at_half_pi[3 * (m - 1) / 4] = std::numbers::pi / h; // w = +pi/2
    const double expected = std::pow(std::numbers::pi / 2.0, 4);
    CHECK(std::abs(spectrum_moment4(at_half_pi) - expected) < 1e-3);
}

TEST_CASE("moment is linear and reflection-invariant") {
    Rng rng(17);
    const size_t m = 4097;
    std::vector<double> a(m);
    std::vector<double> b(m);
    for (size_t i = 0; i < m; ++i) {
        a[i] = 0.5 + 0.5 * rng.uniform();
        b[i] = 0.5 + 0.5 * rng.uniform();
    }
    // normalize both to unit mass
    const auto normalize = [m](std::vector<double>& s) {
        double mass = 0.0;
        const double h = 2.0 * std::numbers::pi / static_cast<double>(m - 1);
        for (size_t i = 0; i < m; ++i)
            mass += ((i == 0 || i + 1 == m) ? 0.5 : 1.0) * s[i];
        mass *= h / (2.0 * std::numbers::pi);
        for (auto& v : s)
            v /= mass;
    };
    normalize(a);
    normalize(b);

    std::vector<double> mix(m);
    for (size_t i = 0; i < m; ++i)
        mix[i] = 0.25 * a[i] + 0.75 * b[i];
    CHECK(spectrum_moment4(mix) ==
          doctest::Approx(0.25 * spectrum_moment4(a) + 0.75 * spectrum_moment4(b)).epsilon(1e-12));

    std::vector<double> reflected(a.rbegin(), a.rend());
    CHECK(spectrum_moment4(reflected) == doctest::Approx(spectrum_moment4(a)).epsilon(1e-12));
}

TEST_CASE("density preconditions are enforced") {
    CHECK_THROWS_AS((void)spectrum_moment4(std::vector<double>(100, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS((void)spectrum_moment4(std::vector<double>(4097, 2.0)), std::invalid_argument);
    std::vector<double> negative(4097, 1.0);
    negative[5] = -1.0;
    CHECK_THROWS_AS((void)spectrum_moment4(negative), std::invalid_argument);
}

TEST_CASE("aliasing warning appears exactly at the slope limit") {
    OfdmParams params; // n = 64
    PilotGeometry geometry;
    geometry.delta_t = 8; // limit 64/16 = 4
    CHECK(estimability_warning(3.9, params, geometry).empty());
    CHECK_FALSE(estimability_warning(4.0, params, geometry).empty());
    CHECK_FALSE(estimability_warning(-4.5, params, geometry).empty());
}
