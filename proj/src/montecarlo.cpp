// SPDX-License-Identifier: Apache-2.0

#include "phasefit/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "phasefit/estimator.hpp"
#include "phasefit/impairments.hpp"
#include "phasefit/rng.hpp"
#include "phasefit/txrx.hpp"

namespace phasefit {

namespace {

// fixed stage tags for per-trial sub-streams
enum : std::uint64_t { stage_grid = 1, stage_channel = 2, stage_phn = 3, stage_awgn = 4 };

double mean_of(const std::vector<double>& v) {
    if (v.empty())
        return 0.0;
    double acc = 0.0;
    for (double x : v)
        acc += x;
    return acc / static_cast<double>(v.size());
}

} // namespace

TrialRealization build_trial_realization(const McConfig& config, int snr_index, int np_index, int trial_index) {
    TrialRealization real;
    real.geometry = config.geometry;
    real.geometry.n_p = config.n_p_list.at(static_cast<size_t>(np_index));
    const double snr_db = config.snr_db_list.at(static_cast<size_t>(snr_index));

    const std::uint64_t trial_seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(snr_index), static_cast<std::uint64_t>(np_index),
                    static_cast<std::uint64_t>(trial_index));

    real.lattice = gen_pattern(real.geometry.pattern, config.params, real.geometry);
    const std::vector<int> pilots = pilot_bearing_symbols(real.lattice);

    ConstellationSpec constellation{ConstellationKind::qpsk, pilots};
    real.grid = random_grid(config.params, constellation, derive_seed(trial_seed, stage_grid, 0, 0));
    // pilot-bearing symbols are dedicated: data cells cleared, lattice
    // cells carry unit pilots (a frequency comb, i.e. a time impulse train)
    for (const int l : pilots)
        std::fill(real.grid.symbols[static_cast<size_t>(l)].begin(), real.grid.symbols[static_cast<size_t>(l)].end(),
                  cplx{0.0, 0.0});
    for (const auto& [l, k] : real.lattice.points)
        real.grid.symbols[static_cast<size_t>(l)][static_cast<size_t>(k)] = cplx{1.0, 0.0};

    if (config.estimator == EstimatorKind::moose && real.grid.symbols.size() >= 2)
        real.grid.symbols[1] = real.grid.symbols[0]; // baseline needs one repeated symbol

    ChannelOutput ch = apply_channel(real.grid, config.channel, config.params,
                                     derive_seed(trial_seed, stage_channel, 0, 0));
    real.h = std::move(ch.h);

    TimeFrame frame = modulate_frame(ch.grid, config.params);
    frame = apply_cfo(std::move(frame), config.epsilon, config.params);

    ImpairmentState state;
    state.epsilon = config.epsilon;
    state.phn_sigma2 = config.phn_sigma2;
    state.snr_db = snr_db;
    state.channel = config.channel;
    frame = apply_phn(std::move(frame), state, derive_seed(trial_seed, stage_phn, 0, 0));
    real.phn_trajectory = std::move(state.phn_trajectory);

    real.frame = apply_awgn(std::move(frame), snr_db, derive_seed(trial_seed, stage_awgn, 0, 0));
    return real;
}

TrialOutput run_trial(const McConfig& config, int snr_index, int np_index, int trial_index) {
    const TrialRealization real = build_trial_realization(config, snr_index, np_index, trial_index);
    TrialOutput out;

    switch (config.estimator) {
    case EstimatorKind::regression: {
        KnownSignal known{&real.grid, &real.h};
        const KnownSignal* known_ptr = config.mode == PhaseMode::known_signal ? &known : nullptr;
        const std::vector<EstimateRecord> records = estimate_frame(
            real.frame, real.lattice, real.geometry, config.params, config.mode, known_ptr, config.gamma);
        std::vector<double> eps(records.size());
        out.phn_errors.resize(records.size());
        for (size_t l = 0; l < records.size(); ++l) {
            eps[l] = records[l].epsilon_hat;
            out.phn_errors[l] = records[l].phn_hat - real.phn_trajectory[l];
        }
        out.epsilon_hat = mean_of(eps);
        break;
    }
    case EstimatorKind::sum: {
        KnownSignal known{&real.grid, &real.h};
        const KnownSignal* known_ptr = config.mode == PhaseMode::known_signal ? &known : nullptr;
        std::vector<double> eps;
        for (const int l : pilot_bearing_symbols(real.lattice)) {
            const PhaseSeries series =
                unwrap(extract_phase_series(real.frame, l, real.geometry, config.mode, known_ptr));
            eps.push_back(estimate_cfo_sum(series, l, real.geometry, config.params));
        }
        out.epsilon_hat = mean_of(eps);
        break;
    }
    case EstimatorKind::moose: {
        const size_t offset = static_cast<size_t>(real.frame.body_offset());
        const size_t n = static_cast<size_t>(config.params.n);
        std::span<const cplx> body0(real.frame.symbols.at(0).data() + offset, n);
        std::span<const cplx> body1(real.frame.symbols.at(1).data() + offset, n);
        out.epsilon_hat = estimate_cfo_moose(body0, body1);
        break;
    }
    }
    return out;
}

McResult run_sweep(const McConfig& config, int threads) {
    if (auto check = validate_config(config); !check)
        throw ConfigError(check.message);
    if (threads < 0)
        throw ConfigError("thread count must be >= 0");

    const int trials = config.trials;
    int workers = threads;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, trials);

    McResult result;
    for (size_t si = 0; si < config.snr_db_list.size(); ++si) {
        for (size_t ni = 0; ni < config.n_p_list.size(); ++ni) {
            std::vector<TrialOutput> outputs(static_cast<size_t>(trials));

            std::exception_ptr first_error;
            int error_trial = -1;
            std::mutex error_mutex;
            std::atomic<bool> failed{false};

            const auto work = [&](int t) {
                try {
                    outputs[static_cast<size_t>(t)] =
                        run_trial(config, static_cast<int>(si), static_cast<int>(ni), t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                        error_trial = t;
                    }
                    failed.store(true);
                }
            };

            if (workers <= 1) {
                for (int t = 0; t < trials && !failed.load(); ++t)
                    work(t);
            } else {
                std::atomic<int> next{0};
                std::vector<std::thread> pool;
                pool.reserve(static_cast<size_t>(workers));
                for (int w = 0; w < workers; ++w) {
                    pool.emplace_back([&] {
                        while (!failed.load()) {
                            const int t = next.fetch_add(1);
                            if (t >= trials)
                                return;
                            work(t);
                        }
                    });
                }
                for (auto& th : pool)
                    th.join();
            }

            if (failed.load()) {
                std::string what = "unknown error";
                try {
                    std::rethrow_exception(first_error);
                } catch (const std::exception& e) {
                    what = e.what();
                } catch (...) {
                }
                std::ostringstream os;
                os << "sweep aborted at snr_db=" << config.snr_db_list[si] << " n_p=" << config.n_p_list[ni]
                   << " trial=" << error_trial << ": " << what;
                throw std::runtime_error(os.str());
            }

            // deterministic reduction in trial order, independent of scheduling
            McRow row;
            row.snr_db = config.snr_db_list[si];
            row.n_p = config.n_p_list[ni];
            row.trials = trials;
            double sum_err = 0.0;
            double sum_sq = 0.0;
            double sum_phn = 0.0;
            for (const auto& trial : outputs) {
                const double err = trial.epsilon_hat - config.epsilon;
                sum_err += err;
                sum_sq += err * err;
                sum_phn += mean_of(trial.phn_errors);
            }
            const double inv = 1.0 / static_cast<double>(trials);
            row.mean_error = sum_err * inv;
            row.mse = sum_sq * inv;
            double sum_var = 0.0;
            for (const auto& trial : outputs) {
                const double dev = trial.epsilon_hat - config.epsilon - row.mean_error;
                sum_var += dev * dev;
            }
            row.var_error = sum_var * inv;
            row.mean_phn_error = sum_phn * inv;
            result.rows.push_back(row);
        }
    }
    return result;
}

} // namespace phasefit
