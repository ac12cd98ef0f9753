// SPDX-License-Identifier: Apache-2.0

#include "phasefit/cli.hpp"

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phasefit/config.hpp"
#include "phasefit/estimator.hpp"
#include "phasefit/impairments.hpp"
#include "phasefit/io.hpp"
#include "phasefit/montecarlo.hpp"
#include "phasefit/pilots.hpp"

namespace phasefit {

namespace {

PatternKind pattern_from_name(const std::string& name) {
    if (name == "block")
        return PatternKind::block;
    if (name == "comb")
        return PatternKind::comb;
    if (name == "rectangular")
        return PatternKind::rectangular;
    if (name == "hexagonal")
        return PatternKind::hexagonal;
    if (name == "parallelogram")
        return PatternKind::parallelogram;
    if (name == "diamond")
        return PatternKind::diamond;
    throw ConfigError("unknown pattern kind '" + name +
                      "' (expected block|comb|rectangular|hexagonal|parallelogram|diamond)");
}

void run_simulate(const std::string& config_path, const std::string& out_path, int threads,
                  const std::string& iq_out) {
    const McConfig config = load_config(config_path);
    if (auto check = validate_config(config); !check)
        throw ConfigError(check.message);
    for (const int n_p : config.n_p_list) {
        PilotGeometry geometry = config.geometry;
        geometry.n_p = n_p;
        if (const std::string warning = estimability_warning(config.epsilon, config.params, geometry);
            !warning.empty())
            std::cerr << "warning: " << warning << '\n';
    }
    const McResult result = run_sweep(config, threads);
    write_csv(result, out_path);
    if (!iq_out.empty()) {
        // one representative impaired frame (first sweep point, trial 0)
        const TrialRealization real = build_trial_realization(config, 0, 0, 0);
        write_iq(real.frame, iq_out);
    }
}

void run_estimate(const std::string& config_path, const std::string& iq_path, const std::string& out_path) {
    McConfig config = load_config(config_path);
    if (auto check = validate_config(config); !check)
        throw ConfigError(check.message);
    if (config.mode != PhaseMode::paper)
        throw ConfigError("estimate works on recorded samples and requires mode = paper "
                          "(no transmitted-grid knowledge is available offline)");
    config.geometry.n_p = config.n_p_list.front();
    const TimeFrame frame = read_iq(iq_path, config.params);
    const PilotLattice lattice = gen_pattern(config.geometry.pattern, config.params, config.geometry);
    const std::vector<EstimateRecord> records =
        estimate_frame(frame, lattice, config.geometry, config.params, PhaseMode::paper, nullptr, config.gamma);
    write_records_csv(records, out_path);
}

void run_patterns(const std::string& kind_name, int n, int l_symbols, int x1, int y2, const std::string& out_path) {
    const PatternKind kind = pattern_from_name(kind_name);
    OfdmParams params;
    params.n = n;
    params.cp_len = 0;
    params.l_symbols = l_symbols;
    PilotGeometry geometry;
    geometry.delta_t = 1;
    geometry.n_p = 1;
    geometry.pattern = kind;
    geometry.x1 = x1;
    geometry.y2 = y2;
    if (auto check = validate(params, geometry); !check)
        throw ConfigError(check.message);
    write_lattice_csv(gen_pattern(kind, params, geometry), out_path);
}

void run_moments(const std::string& spectrum_path, const std::string& out_path) {
    const std::vector<double> samples = read_spectrum_csv(spectrum_path);
    const double moment = spectrum_moment4(samples);
    const std::string text = format_double(moment);
    std::cout << text << '\n';
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw IoError("cannot open for writing: " + out_path);
        f << text << '\n';
    }
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"OFDM pilot-phase toolkit: carrier/sampling frequency offset and "
                 "phase-noise estimation with a Monte Carlo accuracy harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string iq_path;
    std::string iq_out;
    int threads = 0;

    CLI::App* simulate = app.add_subcommand("simulate", "Run a Monte Carlo sweep and write a results CSV");
    simulate->add_option("--config", config_path, "Experiment config file")->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();
    simulate->add_option("--threads", threads, "Worker threads (0 = hardware, 1 = serial)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--iq-out", iq_out, "Also write one impaired frame as raw cf32 samples");

    std::string est_config;
    std::string est_iq;
    std::string est_out;
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate offsets from a recorded cf32 IQ file");
    estimate->add_option("--config", est_config, "Experiment config file (mode must be paper)")->required();
    estimate->add_option("--iq", est_iq, "Recorded cf32 IQ file, dimensions per config")->required();
    estimate->add_option("--out", est_out, "Output CSV path (one row per symbol)")->required();

    std::string pat_kind;
    std::string pat_out;
    int pat_n = 64;
    int pat_l = 16;
    int pat_x1 = 8;
    int pat_y2 = 8;
    CLI::App* patterns = app.add_subcommand("patterns", "Emit a pilot lattice as CSV rows l,k");
    patterns->add_option("--kind", pat_kind, "block|comb|rectangular|hexagonal|parallelogram|diamond")->required();
    patterns->add_option("--n", pat_n, "Subcarriers per symbol");
    patterns->add_option("--l-symbols", pat_l, "Symbols per frame");
    patterns->add_option("--x1", pat_x1, "Symbol-domain pilot interval");
    patterns->add_option("--y2", pat_y2, "Subcarrier-domain pilot interval");
    patterns->add_option("--out", pat_out, "Output CSV path")->required();

    std::string mom_spectrum;
    std::string mom_out;
    CLI::App* moments = app.add_subcommand("moments", "Fourth spectral moment of a sampled density");
    moments->add_option("--spectrum", mom_spectrum, "CSV of density samples on a uniform grid over [-pi, pi]")
        ->required();
    moments->add_option("--out", mom_out, "Also write the value to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed())
            run_simulate(config_path, out_path, threads, iq_out);
        else if (estimate->parsed())
            run_estimate(est_config, est_iq, est_out);
        else if (patterns->parsed())
            run_patterns(pat_kind, pat_n, pat_l, pat_x1, pat_y2, pat_out);
        else if (moments->parsed())
            run_moments(mom_spectrum, mom_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace phasefit
