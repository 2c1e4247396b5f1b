#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scsa/dense_matrix.hpp"
#include "scsa/errors.hpp"
#include "scsa/grid.hpp"
#include "scsa/noise_bounds.hpp"
#include "scsa/schrodinger.hpp"
#include "scsa/sweep.hpp"
#include "scsa/version.hpp"

namespace scsa {

/// Full-precision decimal form; %.17g round-trips every double.
inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Writes content to path via a temp file and rename, so readers never see
/// a partial file.
inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("rename failed: " + tmp + " -> " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// FNV-1a 64-bit content checksum, hex encoded. Used in manifests to record
/// input identity; not cryptographic.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

// ---------------------------------------------------------------------------
// Signal CSV: header "x,value", one row per sample, LF endings.

inline std::string signal_to_csv(const SampledSignal& s) {
    std::string out = "x,value\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        out += format_full(s.grid.x(j));
        out += ',';
        out += format_full(s.values[j]);
        out += '\n';
    }
    return out;
}

inline void write_signal_csv(const std::string& path, const SampledSignal& s) {
    atomic_write(path, signal_to_csv(s));
}

inline SampledSignal signal_from_csv(const std::string& content, const std::string& origin) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(origin + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,value")
        throw ParseError(origin + ": row 1: expected header 'x,value', got '" + line + "'");

    std::vector<double> xs;
    std::vector<double> vs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(origin + ": row " + std::to_string(row) + ": missing comma");
        char* end = nullptr;
        const std::string xs_str = line.substr(0, comma);
        const std::string vs_str = line.substr(comma + 1);
        const double x = std::strtod(xs_str.c_str(), &end);
        if (end == xs_str.c_str() || *end != '\0')
            throw ParseError(origin + ": row " + std::to_string(row) + ": bad x value");
        const double v = std::strtod(vs_str.c_str(), &end);
        if (end == vs_str.c_str() || *end != '\0')
            throw ParseError(origin + ": row " + std::to_string(row) + ": bad sample value");
        if (!std::isfinite(x) || !std::isfinite(v))
            throw ParseError(origin + ": row " + std::to_string(row) + ": non-finite entry");
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 2) throw ParseError(origin + ": need at least two samples");

    Grid grid = make_grid(xs.front(), xs.back(), xs.size());
    // Uniformity gate relative to the spacing; generous enough for files
    // written at less than full precision.
    const double tol = 1e-6 * grid.dx;
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (std::abs(xs[j] - grid.x(j)) > tol)
            throw ParseError(origin + ": row " + std::to_string(j + 2) +
                             ": x is not on a uniform grid");
    return SampledSignal(grid, std::move(vs));
}

inline SampledSignal read_signal_csv(const std::string& path) {
    return signal_from_csv(read_file(path), path);
}

// ---------------------------------------------------------------------------
// Sweep CSV: one row per h, empty cells where a column does not apply.

inline std::string sweep_to_csv(const HSweepResult& r) {
    std::string out = "h,N_h,raw_residual,filtered_residual,true_error,noise_bound\n";
    for (const auto& pt : r.points) {
        out += format_full(pt.h);
        out += ',';
        if (pt.failed) {
            out += ",,,,\n";
            continue;
        }
        out += std::to_string(pt.n_h);
        out += ',';
        out += format_full(pt.raw_residual);
        out += ',';
        out += format_full(pt.filtered_residual);
        out += ',';
        if (pt.true_error) out += format_full(*pt.true_error);
        out += ',';
        if (pt.noise_bound) out += format_full(*pt.noise_bound);
        out += '\n';
    }
    return out;
}

/// Plain-text dense dump, row-major, space separated; for cross-checking
/// against external tools.
inline std::string matrix_to_text(const DenseMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_full(m(i, j));
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON reports (nlohmann orders keys, so output is stable).

inline nlohmann::json spectrum_to_json(const NegativeSpectrum& spec) {
    nlohmann::json j;
    j["h"] = spec.h;
    j["N_h"] = spec.count();
    j["kappas"] = spec.kappas;
    j["normalization_residuals"] = spec.normalization_residuals();
    return j;
}

inline nlohmann::json bound_report_to_json(const BoundReport& r) {
    nlohmann::json j;
    j["h"] = r.h;
    j["N_h"] = r.n_h;
    j["B"] = r.B;
    j["gamma"] = r.gamma;
    j["p"] = r.p;
    j["bound_value"] = r.bound_value;
    j["per_mode_terms"] = r.per_mode_terms;
    if (r.empirical_error) j["empirical_error"] = *r.empirical_error;
    switch (r.c5) {
        case C5Status::satisfied: j["c5_satisfied"] = true; break;
        case C5Status::violated: j["c5_satisfied"] = false; break;
        case C5Status::unknown: j["c5_satisfied"] = "unknown"; break;
    }
    j["c6_violations"] = r.c6_violation_modes;
    return j;
}

inline nlohmann::json sweep_summary_to_json(const HSweepResult& r, const SelectionResult& sel) {
    nlohmann::json j;
    j["recommended_h"] = sel.recommended_h;
    j["local_minima"] = sel.local_minima;
    j["no_interior_minimum"] = sel.no_interior_minimum;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : r.points) {
        nlohmann::json p;
        p["h"] = pt.h;
        if (pt.failed) {
            p["failed"] = true;
            p["error"] = pt.error;
        } else {
            p["N_h"] = pt.n_h;
            p["raw_residual"] = pt.raw_residual;
            p["filtered_residual"] = pt.filtered_residual;
            if (pt.true_error) p["true_error"] = *pt.true_error;
            if (pt.noise_bound) p["noise_bound"] = *pt.noise_bound;
        }
        pts.push_back(std::move(p));
    }
    j["points"] = std::move(pts);
    return j;
}

/// Run provenance block embedded in every JSON artifact: tool version, the
/// full configuration, input checksums, and a hash of the configuration.
inline nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                                    const std::vector<std::string>& input_paths) {
    nlohmann::json m;
    m["tool"] = "scsa";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = config;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& p : input_paths) inputs[p] = fnv1a_hex(read_file(p));
    m["inputs"] = std::move(inputs);
    m["config_hash"] = fnv1a_hex(config.dump());
    return m;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

}  // namespace scsa
