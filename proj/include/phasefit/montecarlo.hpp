// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "phasefit/config.hpp"
#include "phasefit/pilots.hpp"

namespace phasefit {

/// One sweep-point summary. var_error is the population variance of the
/// CFO estimation error, so mse = var_error + mean_error^2 holds exactly.
struct McRow {
    double snr_db = 0.0;
    int n_p = 0;
    int trials = 0;
    double mse = 0.0;
    double mean_error = 0.0;
    double var_error = 0.0;
    double mean_phn_error = 0.0;
};

struct McResult {
    std::vector<McRow> rows;
};

/// Frame-level outputs of one trial: the frame-mean CFO estimate and the
/// signed per-symbol phase-noise estimation errors (empty for estimators
/// that do not split off phase noise).
struct TrialOutput {
    double epsilon_hat = 0.0;
    std::vector<double> phn_errors;
};

/// Everything generated for one trial before estimation: the impaired
/// frame plus the transmitted grid, realized channel, phase-noise
/// trajectory, and pilot lattice needed to judge the estimates.
struct TrialRealization {
    TimeFrame frame;
    FreqGrid grid;
    std::vector<std::vector<cplx>> h;
    std::vector<double> phn_trajectory;
    PilotLattice lattice;
    PilotGeometry geometry;
};

/// Forward model for one trial: pilot-bearing symbols carry a unit comb
/// on the lattice subcarriers (data cells zeroed), remaining symbols
/// carry random QPSK; then channel, CFO, phase noise, and AWGN. Fully
/// determined by (config.seed, snr_index, np_index, trial_index).
TrialRealization build_trial_realization(const McConfig& config, int snr_index, int np_index, int trial_index);

/// One end-to-end trial: forward model followed by the configured
/// estimator.
TrialOutput run_trial(const McConfig& config, int snr_index, int np_index, int trial_index);

/// Full cross-product sweep over snr_db_list x n_p_list. Trials run on
/// `threads` workers (0 = hardware concurrency, 1 = forced serial); the
/// result is identical for every worker count because each trial draws
/// from its own derived seed and the reduction walks trials in index
/// order.
McResult run_sweep(const McConfig& config, int threads = 0);

} // namespace phasefit
