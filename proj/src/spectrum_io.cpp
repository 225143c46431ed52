#include "speckit/spectrum_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace speckit {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw IoError("write failed: " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

/// Splits a data line on commas and/or blanks; returns empty for comments.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, int line_no) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError("bad numeric field '" + s + "' at " + path.string() + ":" + std::to_string(line_no));
    }
}

}  // namespace

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
    std::ostringstream os;
    os << "# speckit spectrum\n";
    os << "# kind: " << to_string(s.kind) << "\n";
    os << "# columns: wavelength_nm, intensity\n";
    for (int i = 0; i < s.grid.count; ++i)
        os << format_number(s.grid.node(i)) << ", " << format_number(s.values[static_cast<size_t>(i)])
           << "\n";
    write_text_file(path, os.str());
}

Spectrum read_spectrum(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());

    SpectrumKind kind = SpectrumKind::measured;
    std::vector<double> lambdas, values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find("# kind:");
        if (hash != std::string::npos) {
            std::string k = line.substr(hash + 7);
            k.erase(std::remove_if(k.begin(), k.end(), [](char c) { return c == ' ' || c == '\r'; }),
                    k.end());
            kind = spectrum_kind_from_string(k);
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 2)
            throw IoError("expected two columns at " + path.string() + ":" + std::to_string(line_no));
        lambdas.push_back(parse_double(fields[0], path, line_no));
        values.push_back(parse_double(fields[1], path, line_no));
    }
    if (lambdas.size() < 2)
        throw IoError("spectrum file needs at least two nodes: " + path.string());

    const double start = lambdas.front();
    const double step = (lambdas.back() - start) / static_cast<double>(lambdas.size() - 1);
    if (!(step > 0.0))
        throw IoError("spectrum wavelengths must be strictly increasing: " + path.string());
    for (size_t i = 1; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > lambdas[i - 1]))
            throw IoError("spectrum wavelengths must be strictly increasing: " + path.string());
        const double expected = start + step * static_cast<double>(i);
        if (std::abs(lambdas[i] - expected) > 1e-6 * step)
            throw IoError("spectrum wavelengths are not uniformly spaced: " + path.string());
    }
    return Spectrum(WavelengthGrid(start, step, static_cast<int>(lambdas.size())), std::move(values), kind);
}

void write_curve_bundle(const std::filesystem::path& path, const std::vector<ErrorCurve>& curves) {
    std::ostringstream os;
    os << "# columns: log10_alpha, sigma_rel, curve_id\n";
    for (const auto& c : curves) {
        for (size_t i = 0; i < c.size(); ++i)
            os << format_number(c.log10_alphas[i]) << ", " << format_number(c.sigmas[i]) << ", "
               << (c.meta.id.empty() ? "curve" : c.meta.id) << "\n";
    }
    write_text_file(path, os.str());
}

std::vector<ErrorCurve> read_curve_bundle(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    // preserve first-seen order of curve ids
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> data;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 3)
            throw IoError("expected three columns at " + path.string() + ":" + std::to_string(line_no));
        const std::string& id = fields[2];
        if (data.find(id) == data.end()) order.push_back(id);
        auto& entry = data[id];
        entry.first.push_back(parse_double(fields[0], path, line_no));
        entry.second.push_back(parse_double(fields[1], path, line_no));
    }
    std::vector<ErrorCurve> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        CurveMeta meta;
        meta.id = id;
        auto& entry = data[id];
        out.emplace_back(std::move(entry.first), std::move(entry.second), std::move(meta));
    }
    if (out.empty())
        throw IoError("curve bundle is empty: " + path.string());
    return out;
}

void write_curve(const std::filesystem::path& path, const ErrorCurve& curve) {
    std::ostringstream os;
    os << "# columns: log10_alpha, sigma_rel\n";
    for (size_t i = 0; i < curve.size(); ++i)
        os << format_number(curve.log10_alphas[i]) << ", " << format_number(curve.sigmas[i]) << "\n";
    write_text_file(path, os.str());
}

ErrorCurve read_curve(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::vector<double> logs, sigmas;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 2)
            throw IoError("expected two columns at " + path.string() + ":" + std::to_string(line_no));
        logs.push_back(parse_double(fields[0], path, line_no));
        sigmas.push_back(parse_double(fields[1], path, line_no));
    }
    if (logs.empty())
        throw IoError("curve file is empty: " + path.string());
    return ErrorCurve(std::move(logs), std::move(sigmas));
}

void write_envelope_table(const std::filesystem::path& path, const ErrorCurve& upper,
                          const EnvelopeFamily& family) {
    if (family.log10_alphas != upper.log10_alphas)
        throw DimensionError("write_envelope_table: family and curve tabulations differ");
    std::ostringstream os;
    os << "# columns: log10_alpha, sigma_rel";
    for (double g : family.g_values) os << ", epsilon_g_" << format_number(g);
    os << "\n";
    for (size_t i = 0; i < upper.size(); ++i) {
        os << format_number(upper.log10_alphas[i]) << ", " << format_number(upper.sigmas[i]);
        for (size_t k = 0; k < family.g_values.size(); ++k)
            os << ", " << format_number(family.epsilons[k][i]);
        os << "\n";
    }
    write_text_file(path, os.str());
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char out[20];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace speckit
