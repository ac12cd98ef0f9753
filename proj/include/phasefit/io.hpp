// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "phasefit/errors.hpp"
#include "phasefit/model.hpp"
#include "phasefit/montecarlo.hpp"
#include "phasefit/pilots.hpp"

namespace phasefit {

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

/// Sweep results: header `snr_db,n_p,trials,mse,mean_error,var_error,mean_phn_error`,
/// one row per sweep point, '\n' line endings, floats via format_double.
void write_csv(const McResult& result, const std::filesystem::path& path);

/// Inverse of write_csv; rejects files with a different header.
McResult read_mc_csv(const std::filesystem::path& path);

/// Raw interleaved little-endian float32 I/Q samples ("cf32"): symbols
/// concatenated in order, CP included. Dimensions travel in the config.
void write_iq(const TimeFrame& frame, const std::filesystem::path& path);

/// Inverse of write_iq. The file must hold exactly
/// l_symbols * (cp_len + n) samples for the given params.
TimeFrame read_iq(const std::filesystem::path& path, const OfdmParams& params);

/// Lattice as CSV rows `l,k` with a header line.
void write_lattice_csv(const PilotLattice& lattice, const std::filesystem::path& path);

/// Per-symbol estimates as CSV: `symbol,epsilon_hat,c_hat,phn_hat`.
void write_records_csv(std::span<const EstimateRecord> records, const std::filesystem::path& path);

/// Sampled spectral density, one value per line (a trailing value per
/// line is also accepted for `w,value` rows); an optional non-numeric
/// first line is skipped as a header.
std::vector<double> read_spectrum_csv(const std::filesystem::path& path);

} // namespace phasefit
