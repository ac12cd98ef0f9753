// SPDX-License-Identifier: Apache-2.0

#include "phasefit/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace phasefit {

namespace {

constexpr const char* mc_header = "snr_db,n_p,trials,mse,mean_error,var_error,mean_phn_error";

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open for writing: " + path.string());
    return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open for reading: " + path.string());
    return f;
}

double parse_field(const std::string& field, const std::filesystem::path& path, int line_no) {
    double out = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [p, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || p != end)
        throw IoError("bad numeric field '" + field + "' at line " + std::to_string(line_no) + " of " +
                      path.string());
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

void put_f32_le(std::ofstream& f, float v) {
    const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    const std::array<char, 4> raw{static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                                  static_cast<char>((bits >> 16) & 0xff), static_cast<char>((bits >> 24) & 0xff)};
    f.write(raw.data(), raw.size());
}

float get_f32_le(const unsigned char* p) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(bits);
}

} // namespace

std::string format_double(double v) {
    std::array<char, 64> buf;
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

void write_csv(const McResult& result, const std::filesystem::path& path) {
    std::ofstream f = open_out(path);
    f << mc_header << '\n';
    for (const McRow& row : result.rows) {
        f << format_double(row.snr_db) << ',' << row.n_p << ',' << row.trials << ',' << format_double(row.mse) << ','
          << format_double(row.mean_error) << ',' << format_double(row.var_error) << ','
          << format_double(row.mean_phn_error) << '\n';
    }
    if (!f)
        throw IoError("write failed: " + path.string());
}

McResult read_mc_csv(const std::filesystem::path& path) {
    std::ifstream f = open_in(path);
    std::string line;
    if (!std::getline(f, line))
        throw IoError("empty results file: " + path.string());
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != mc_header)
        throw IoError("unexpected CSV header in " + path.string());
    McResult result;
    int line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 7)
            throw IoError("expected 7 fields at line " + std::to_string(line_no) + " of " + path.string());
        McRow row;
        row.snr_db = parse_field(fields[0], path, line_no);
        row.n_p = static_cast<int>(parse_field(fields[1], path, line_no));
        row.trials = static_cast<int>(parse_field(fields[2], path, line_no));
        row.mse = parse_field(fields[3], path, line_no);
        row.mean_error = parse_field(fields[4], path, line_no);
        row.var_error = parse_field(fields[5], path, line_no);
        row.mean_phn_error = parse_field(fields[6], path, line_no);
        result.rows.push_back(row);
    }
    return result;
}

void write_iq(const TimeFrame& frame, const std::filesystem::path& path) {
    std::ofstream f = open_out(path);
    for (const auto& sym : frame.symbols) {
        for (const cplx& v : sym) {
            put_f32_le(f, static_cast<float>(v.real()));
            put_f32_le(f, static_cast<float>(v.imag()));
        }
    }
    if (!f)
        throw IoError("write failed: " + path.string());
}

TimeFrame read_iq(const std::filesystem::path& path, const OfdmParams& params) {
    std::ifstream f = open_in(path);
    f.seekg(0, std::ios::end);
    const std::streamoff size = f.tellg();
    f.seekg(0, std::ios::beg);
    if (size % 8 != 0)
        throw IoError("truncated IQ file (size not a multiple of 8 bytes): " + path.string());
    const std::size_t samples = static_cast<std::size_t>(size) / 8;
    const std::size_t per_symbol = static_cast<std::size_t>(params.cp_len) + static_cast<std::size_t>(params.n);
    const std::size_t expected = per_symbol * static_cast<std::size_t>(params.l_symbols);
    if (samples != expected)
        throw IoError("IQ sample count " + std::to_string(samples) + " does not match l_symbols*(cp_len+n) = " +
                      std::to_string(expected) + ": " + path.string());

    std::vector<unsigned char> raw(static_cast<std::size_t>(size));
    if (size > 0 && !f.read(reinterpret_cast<char*>(raw.data()), size))
        throw IoError("read failed: " + path.string());

    TimeFrame frame;
    frame.cp_len = params.cp_len;
    frame.has_cp = params.cp_len > 0;
    frame.symbols.assign(static_cast<std::size_t>(params.l_symbols), std::vector<cplx>(per_symbol));
    const unsigned char* p = raw.data();
    for (auto& sym : frame.symbols) {
        for (cplx& v : sym) {
            const float re = get_f32_le(p);
            const float im = get_f32_le(p + 4);
            v = {static_cast<double>(re), static_cast<double>(im)};
            p += 8;
        }
    }
    return frame;
}

void write_lattice_csv(const PilotLattice& lattice, const std::filesystem::path& path) {
    std::ofstream f = open_out(path);
    f << "l,k\n";
    for (const auto& [l, k] : lattice.points)
        f << l << ',' << k << '\n';
    if (!f)
        throw IoError("write failed: " + path.string());
}

void write_records_csv(std::span<const EstimateRecord> records, const std::filesystem::path& path) {
    std::ofstream f = open_out(path);
    f << "symbol,epsilon_hat,c_hat,phn_hat\n";
    for (const EstimateRecord& rec : records) {
        f << rec.symbol_index << ',' << format_double(rec.epsilon_hat) << ',' << format_double(rec.c_hat) << ','
          << format_double(rec.phn_hat) << '\n';
    }
    if (!f)
        throw IoError("write failed: " + path.string());
}

std::vector<double> read_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream f = open_in(path);
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const std::vector<std::string> fields = split_fields(line);
        std::string field = fields.back();
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
            field.erase(field.begin());
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t'))
            field.pop_back();
        double out = 0.0;
        const char* begin = field.data();
        const auto [p, ec] = std::from_chars(begin, begin + field.size(), out);
        const bool numeric = ec == std::errc{} && p == begin + field.size();
        if (!numeric) {
            if (values.empty() && line_no == 1)
                continue; // header line
            throw IoError("bad spectrum value at line " + std::to_string(line_no) + " of " + path.string());
        }
        values.push_back(out);
    }
    if (values.empty())
        throw IoError("no spectrum samples in " + path.string());
    return values;
}

} // namespace phasefit
