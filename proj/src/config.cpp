// SPDX-License-Identifier: Apache-2.0

#include "phasefit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

namespace phasefit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
    std::ostringstream os;
    os << "invalid value for '" << key << "': '" << value << "' (" << why << ")";
    throw ConfigError(os.str());
}

// std::from_chars rejects a leading '+'; accept it here for symmetry with '-'
std::string_view strip_plus(std::string_view v) {
    if (v.size() > 1 && v.front() == '+')
        v.remove_prefix(1);
    return v;
}

long long parse_ll(std::string_view key, std::string_view raw) {
    const std::string_view v = strip_plus(trim(raw));
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        bad_value(key, raw, "expected an integer");
    return out;
}

int parse_int(std::string_view key, std::string_view raw) {
    const long long v = parse_ll(key, raw);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        bad_value(key, raw, "out of int range");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(std::string_view key, std::string_view raw) {
    const std::string_view v = strip_plus(trim(raw));
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        bad_value(key, raw, "expected an unsigned integer");
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

double parse_double(std::string_view key, std::string_view raw) {
    const std::string_view v = trim(raw);
    if (iequals(v, "inf") || iequals(v, "+inf") || iequals(v, "infinity"))
        return std::numeric_limits<double>::infinity();
    if (iequals(v, "-inf") || iequals(v, "-infinity"))
        return -std::numeric_limits<double>::infinity();
    const std::string_view body = strip_plus(v);
    double out = 0.0;
    const auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    if (ec != std::errc{} || p != body.data() + body.size())
        bad_value(key, raw, "expected a number");
    return out;
}

// Complex entries use the engineering convention: "a", "bj", "a+bj", "a-bj".
cplx parse_complex(std::string_view key, std::string_view raw) {
    const std::string_view v = trim(raw);
    if (v.empty())
        bad_value(key, raw, "empty complex value");
    if (v.back() != 'j')
        return {parse_double(key, v), 0.0};
    std::string_view body = v.substr(0, v.size() - 1);
    // locate the sign separating real and imaginary parts (not an exponent sign)
    size_t sep = std::string_view::npos;
    for (size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
            sep = i;
    }
    if (sep == std::string_view::npos) {
        const std::string_view imag = trim(body);
        if (imag.empty() || imag == "+")
            return {0.0, 1.0};
        if (imag == "-")
            return {0.0, -1.0};
        return {0.0, parse_double(key, imag)};
    }
    const double re = parse_double(key, body.substr(0, sep));
    std::string_view imag = trim(body.substr(sep));
    if (imag == "+")
        return {re, 1.0};
    if (imag == "-")
        return {re, -1.0};
    return {re, parse_double(key, imag)};
}

PatternKind parse_pattern(std::string_view key, std::string_view raw) {
    const std::string_view v = trim(raw);
    if (v == "block")
        return PatternKind::block;
    if (v == "comb")
        return PatternKind::comb;
    if (v == "rectangular")
        return PatternKind::rectangular;
    if (v == "hexagonal")
        return PatternKind::hexagonal;
    if (v == "parallelogram")
        return PatternKind::parallelogram;
    if (v == "diamond")
        return PatternKind::diamond;
    bad_value(key, raw, "expected block|comb|rectangular|hexagonal|parallelogram|diamond");
}

} // namespace

McConfig parse_config_text(std::string_view text) {
    McConfig config;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value' on line " + std::to_string(line_no));
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("missing key on line " + std::to_string(line_no));
        if (!seen.insert(std::string(key)).second)
            throw ConfigError("duplicate config key '" + std::string(key) + "'");

        if (key == "n") {
            config.params.n = parse_int(key, value);
        } else if (key == "cp_len") {
            config.params.cp_len = parse_int(key, value);
        } else if (key == "l_symbols") {
            config.params.l_symbols = parse_int(key, value);
        } else if (key == "delta_t") {
            config.geometry.delta_t = parse_int(key, value);
        } else if (key == "n_p_list") {
            config.n_p_list.clear();
            for (const auto part : split(value, ','))
                config.n_p_list.push_back(parse_int(key, part));
        } else if (key == "pattern") {
            config.geometry.pattern = parse_pattern(key, value);
        } else if (key == "x1") {
            config.geometry.x1 = parse_int(key, value);
        } else if (key == "y2") {
            config.geometry.y2 = parse_int(key, value);
        } else if (key == "epsilon") {
            config.epsilon = parse_double(key, value);
        } else if (key == "snr_db_list") {
            config.snr_db_list.clear();
            for (const auto part : split(value, ','))
                config.snr_db_list.push_back(parse_double(key, part));
        } else if (key == "trials") {
            config.trials = parse_int(key, value);
        } else if (key == "seed") {
            config.seed = parse_u64(key, value);
        } else if (key == "mode") {
            const std::string_view v = trim(value);
            if (v == "paper")
                config.mode = PhaseMode::paper;
            else if (v == "known_signal")
                config.mode = PhaseMode::known_signal;
            else
                bad_value(key, value, "expected paper|known_signal");
        } else if (key == "estimator") {
            const std::string_view v = trim(value);
            if (v == "sum")
                config.estimator = EstimatorKind::sum;
            else if (v == "regression")
                config.estimator = EstimatorKind::regression;
            else if (v == "moose")
                config.estimator = EstimatorKind::moose;
            else
                bad_value(key, value, "expected sum|regression|moose");
        } else if (key == "channel") {
            const std::string_view v = trim(value);
            if (v == "identity")
                config.channel.kind = ChannelKind::identity;
            else if (v == "static_taps")
                config.channel.kind = ChannelKind::static_taps;
            else if (v == "block_rayleigh")
                config.channel.kind = ChannelKind::block_rayleigh;
            else
                bad_value(key, value, "expected identity|static_taps|block_rayleigh");
        } else if (key == "taps") {
            config.channel.taps.clear();
            for (const auto part : split(value, ','))
                config.channel.taps.push_back(parse_complex(key, part));
        } else if (key == "rho") {
            config.channel.rho = parse_double(key, value);
        } else if (key == "phn_sigma2") {
            config.phn_sigma2 = parse_double(key, value);
        } else if (key == "gamma") {
            config.gamma = parse_double(key, value);
        } else {
            throw ConfigError("unknown config key '" + std::string(key) + "'");
        }
    }
    return config;
}

McConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot read config file: " + path.string());
    std::ostringstream buffer;
    buffer << f.rdbuf();
    return parse_config_text(buffer.str());
}

ValidationResult validate_config(const McConfig& config) {
    if (config.n_p_list.empty())
        return {false, "n_p_list must be non-empty"};
    if (config.snr_db_list.empty())
        return {false, "snr_db_list must be non-empty"};
    if (config.trials < 1)
        return {false, "trials must be >= 1"};
    if (config.phn_sigma2 < 0.0)
        return {false, "phn_sigma2 must be >= 0"};
    if (config.gamma < 0.0)
        return {false, "gamma must be >= 0"};
    if (config.estimator == EstimatorKind::moose && config.params.l_symbols < 2)
        return {false, "moose estimator needs l_symbols >= 2 (two transmissions of one symbol)"};
    for (const int n_p : config.n_p_list) {
        PilotGeometry geometry = config.geometry;
        geometry.n_p = n_p;
        if (auto check = validate(config.params, geometry); !check)
            return check;
    }
    return {};
}

} // namespace phasefit
