// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "phasefit/errors.hpp"
#include "phasefit/estimator.hpp"
#include "phasefit/impairments.hpp"
#include "phasefit/model.hpp"

namespace phasefit {

enum class EstimatorKind { sum, regression, moose };

/// Full experiment description, read from `key = value` text.
/// geometry.n_p is a placeholder: the sweep substitutes each entry of
/// n_p_list in turn.
struct McConfig {
    OfdmParams params;
    PilotGeometry geometry;
    std::vector<int> n_p_list;
    double epsilon = 0.05;
    std::vector<double> snr_db_list;
    int trials = 1;
    std::uint64_t seed = 1;
    PhaseMode mode = PhaseMode::known_signal;
    EstimatorKind estimator = EstimatorKind::regression;
    ChannelModel channel;
    double phn_sigma2 = 0.0;
    double gamma = 0.0;
};

/// Parses `key = value` lines (# starts a comment, lists are
/// comma-separated). Unknown, duplicate, or malformed entries raise
/// ConfigError. Structural validity is checked separately by
/// validate_config.
McConfig parse_config_text(std::string_view text);

/// Reads and parses a config file. Unreadable file raises IoError;
/// content problems raise ConfigError.
McConfig load_config(const std::filesystem::path& path);

/// Joint validity of the experiment: per-module parameter checks for
/// every n_p in the sweep, non-empty lists, trials >= 1.
ValidationResult validate_config(const McConfig& config);

} // namespace phasefit
