// Copyright 2026 The fwm-modes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration for the command-line front end.
//
// The file is INI-like: `[section]` headers, `key = value` lines, and `#` or
// `;` comments at the start of a line. Every physical quantity carries its
// unit in the key name (power_a_mw, half_angle_deg, ...) and is converted to
// SI here. Missing keys keep their defaults; unknown sections or keys are
// errors.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fwm/core.hpp"
#include "fwm/geometry.hpp"
#include "fwm/interaction.hpp"
#include "fwm/oracle.hpp"

namespace fwm::cli {

class ConfigError : public Error {
   public:
    explicit ConfigError(const std::string &what) : Error("ConfigError", what) {
    }
};

struct SweepSpec {
    std::string parameter;
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 2;

    double value(std::size_t index) const {
        return min + (max - min) * static_cast<double>(index) / static_cast<double>(steps - 1);
    }
};

struct RunConfig {
    PumpConfig pump{795e-9, 0.45 * std::numbers::pi / 180.0, 0.1, 0.1, 0.0};
    DispersionParams dispersion = calibrated_default_dispersion();
    double g_single = 10.0;  // 1/(s W)
    double g_dual = 8.0;     // 1/(s W)
    std::vector<double> tau{0.7, 0.7, 0.7, 0.7};

    double evolve_time = 0.5;  // s

    SweepSpec ratio_sweep{"ratio", 0.01, 0.99, 64};
    double ratio_total_power = 0.2;  // W
    double ratio_time = 0.002;       // s

    SweepSpec strength_sweep{"r", 0.0, 2.0, 21};

    std::vector<double> r_values{0.0, 0.5, 1.0};
    std::vector<std::vector<std::size_t>> partitions{{0}, {0, 1}, {0, 2}, {0, 3}};  // zero-based
    double correlation_time = 1e-3;  // s
    double correlation_threshold = 0.1;

    std::size_t oracle_cutoff = 12;
    double oracle_time = 0.3;  // s
    double oracle_max_eps_t = 0.3;
    std::size_t oracle_random_graphs = 4;
    std::size_t oracle_max_amplitudes = 15 * 15 * 15 * 15;

    CouplingGraph graph() const {
        return coupling_graph_from_powers(pump.power_a, pump.power_b, g_single, g_dual);
    }

    /// Time at which the strongest edge of `g` reaches squeezing parameter r.
    static double time_for_r(const CouplingGraph &g, double r) {
        const double eps = g.max_strength();
        return eps > 0.0 ? r / eps : 0.0;
    }
};

namespace detail {

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

struct Entry {
    std::string value;
    int line = 0;
};

inline std::string where(const std::string &key, const Entry &e) {
    return "line " + std::to_string(e.line) + ", key '" + key + "'";
}

inline double parse_double(const std::string &key, const Entry &e) {
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size() || !std::isfinite(v)) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(where(key, e) + ": expected a number, got '" + e.value + "'");
    }
}

inline std::size_t parse_count(const std::string &key, const Entry &e) {
    const double v = parse_double(key, e);
    if (v < 0.0 || v != std::floor(v) || v > 1e9) {
        throw ConfigError(where(key, e) + ": expected a non-negative integer, got '" + e.value + "'");
    }
    return static_cast<std::size_t>(v);
}

inline std::vector<double> parse_list(const std::string &key, const Entry &e) {
    std::vector<double> out;
    for (const auto &item : split(e.value, ',')) {
        out.push_back(parse_double(key, Entry{item, e.line}));
    }
    if (out.empty()) {
        throw ConfigError(where(key, e) + ": empty list");
    }
    return out;
}

}  // namespace detail

/// Raw `section.key -> value` map with line numbers.
using ConfigEntries = std::map<std::string, detail::Entry>;

inline ConfigEntries read_config_entries(std::istream &in) {
    ConfigEntries entries;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = detail::trim(raw);
        if (text.empty() || text[0] == '#' || text[0] == ';') {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']' || text.size() < 3) {
                throw ConfigError("line " + std::to_string(line) + ": malformed section header '" + text + "'");
            }
            section = detail::trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" + text + "'");
        }
        const std::string key = detail::trim(text.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line) + ": missing key name");
        }
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(line) + ", key '" + key + "': key outside any [section]");
        }
        const std::string full = section + "." + key;
        if (entries.contains(full)) {
            throw ConfigError("line " + std::to_string(line) + ", key '" + full + "': duplicate key");
        }
        entries[full] = {detail::trim(text.substr(eq + 1)), line};
    }
    return entries;
}

/// Converts parsed entries into a validated RunConfig. Throws ConfigError
/// naming the offending key for unknown keys, unparsable values and values
/// outside their domain.
inline RunConfig build_config(const ConfigEntries &entries) {
    RunConfig cfg;
    using Handler = std::function<void(const std::string &, const detail::Entry &)>;
    const double deg = std::numbers::pi / 180.0;
    const double ghz = kTwoPi * 1e9;
    auto num = detail::parse_double;

    const std::map<std::string, Handler> handlers{
        {"pump.wavelength_nm", [&](auto &k, auto &e) { cfg.pump.wavelength_vacuum = num(k, e) * 1e-9; }},
        {"pump.half_angle_deg", [&](auto &k, auto &e) { cfg.pump.half_cross_angle = num(k, e) * deg; }},
        {"pump.power_a_mw", [&](auto &k, auto &e) { cfg.pump.power_a = num(k, e) * 1e-3; }},
        {"pump.power_b_mw", [&](auto &k, auto &e) { cfg.pump.power_b = num(k, e) * 1e-3; }},
        {"pump.detuning_ghz", [&](auto &k, auto &e) { cfg.pump.detuning = num(k, e) * ghz; }},
        {"dispersion.n_pump", [&](auto &k, auto &e) { cfg.dispersion.n_pump = num(k, e); }},
        {"dispersion.n_probe", [&](auto &k, auto &e) { cfg.dispersion.n_probe = num(k, e); }},
        {"dispersion.n_conj", [&](auto &k, auto &e) { cfg.dispersion.n_conj = num(k, e); }},
        {"dispersion.freq_offset_ghz", [&](auto &k, auto &e) { cfg.dispersion.freq_offset = num(k, e) * ghz; }},
        {"gain.g_single_per_w_s", [&](auto &k, auto &e) { cfg.g_single = num(k, e); }},
        {"gain.g_dual_per_w_s", [&](auto &k, auto &e) { cfg.g_dual = num(k, e); }},
        {"loss.tau", [&](auto &k, auto &e) { cfg.tau = detail::parse_list(k, e); }},
        {"evolve.time_s", [&](auto &k, auto &e) { cfg.evolve_time = num(k, e); }},
        {"sweep_ratio.total_power_mw", [&](auto &k, auto &e) { cfg.ratio_total_power = num(k, e) * 1e-3; }},
        {"sweep_ratio.ratio_min", [&](auto &k, auto &e) { cfg.ratio_sweep.min = num(k, e); }},
        {"sweep_ratio.ratio_max", [&](auto &k, auto &e) { cfg.ratio_sweep.max = num(k, e); }},
        {"sweep_ratio.steps", [&](auto &k, auto &e) { cfg.ratio_sweep.steps = detail::parse_count(k, e); }},
        {"sweep_ratio.time_s", [&](auto &k, auto &e) { cfg.ratio_time = num(k, e); }},
        {"sweep_strength.parameter", [&](auto &, auto &e) { cfg.strength_sweep.parameter = e.value; }},
        {"sweep_strength.min", [&](auto &k, auto &e) { cfg.strength_sweep.min = num(k, e); }},
        {"sweep_strength.max", [&](auto &k, auto &e) { cfg.strength_sweep.max = num(k, e); }},
        {"sweep_strength.steps", [&](auto &k, auto &e) { cfg.strength_sweep.steps = detail::parse_count(k, e); }},
        {"entanglement.r_values", [&](auto &k, auto &e) { cfg.r_values = detail::parse_list(k, e); }},
        {"entanglement.partitions",
         [&](auto &k, auto &e) {
             cfg.partitions.clear();
             for (const auto &group : detail::split(e.value, ';')) {
                 std::vector<std::size_t> modes;
                 std::istringstream in(group);
                 std::string tok;
                 while (in >> tok) {
                     const auto m = detail::parse_count(k, detail::Entry{tok, e.line});
                     if (m < 1 || m > 4) {
                         throw ConfigError(detail::where(k, e) + ": mode " + tok + " outside 1..4");
                     }
                     modes.push_back(m - 1);
                 }
                 if (modes.empty() || modes.size() >= 4) {
                     throw ConfigError(detail::where(k, e) + ": partition '" + group +
                                       "' must be a proper non-empty subset of modes 1..4");
                 }
                 cfg.partitions.push_back(std::move(modes));
             }
         }},
        {"entanglement.correlation_time_s", [&](auto &k, auto &e) { cfg.correlation_time = num(k, e); }},
        {"entanglement.correlation_threshold", [&](auto &k, auto &e) { cfg.correlation_threshold = num(k, e); }},
        {"oracle.cutoff", [&](auto &k, auto &e) { cfg.oracle_cutoff = detail::parse_count(k, e); }},
        {"oracle.time_s", [&](auto &k, auto &e) { cfg.oracle_time = num(k, e); }},
        {"oracle.max_eps_t", [&](auto &k, auto &e) { cfg.oracle_max_eps_t = num(k, e); }},
        {"oracle.random_graphs", [&](auto &k, auto &e) { cfg.oracle_random_graphs = detail::parse_count(k, e); }},
        {"oracle.max_amplitudes", [&](auto &k, auto &e) { cfg.oracle_max_amplitudes = detail::parse_count(k, e); }},
    };

    for (const auto &[key, entry] : entries) {
        const auto it = handlers.find(key);
        if (it == handlers.end()) {
            throw ConfigError(detail::where(key, entry) + ": unknown key");
        }
        it->second(key, entry);
    }

    // Domain checks, reported against the key that controls the value.
    auto require = [&](bool ok, const std::string &key, const std::string &what) {
        if (!ok) {
            const auto it = entries.find(key);
            const std::string loc = it == entries.end() ? "key '" + key + "' (default)" : detail::where(key, it->second);
            throw ConfigError(loc + ": " + what);
        }
    };
    require(cfg.pump.wavelength_vacuum > 0.0, "pump.wavelength_nm", "must be > 0");
    require(cfg.pump.half_cross_angle >= 0.0 && cfg.pump.half_cross_angle < std::numbers::pi / 2,
            "pump.half_angle_deg", "must lie in [0, 90)");
    require(cfg.pump.power_a >= 0.0, "pump.power_a_mw", "must be >= 0");
    require(cfg.pump.power_b >= 0.0, "pump.power_b_mw", "must be >= 0");
    require(cfg.dispersion.n_pump >= 1.0 - 1e-3, "dispersion.n_pump", "must be >= 0.999");
    require(cfg.dispersion.n_probe >= 1.0 - 1e-3, "dispersion.n_probe", "must be >= 0.999");
    require(cfg.dispersion.n_conj >= 1.0 - 1e-3, "dispersion.n_conj", "must be >= 0.999");
    require(cfg.dispersion.freq_offset >= 0.0, "dispersion.freq_offset_ghz", "must be >= 0");
    require(cfg.g_single >= 0.0, "gain.g_single_per_w_s", "must be >= 0");
    require(cfg.g_dual >= 0.0, "gain.g_dual_per_w_s", "must be >= 0");
    require(cfg.tau.size() == 1 || cfg.tau.size() == 4, "loss.tau", "needs 1 or 4 values");
    if (cfg.tau.size() == 1) {
        cfg.tau.assign(4, cfg.tau.front());
    }
    for (double t : cfg.tau) {
        require(t >= 0.0 && t <= 1.0, "loss.tau", "transmissions must lie in [0, 1]");
    }
    require(cfg.ratio_sweep.steps >= 2, "sweep_ratio.steps", "must be >= 2");
    require(cfg.ratio_sweep.min > 0.0 && cfg.ratio_sweep.max < 1.0 && cfg.ratio_sweep.min < cfg.ratio_sweep.max,
            "sweep_ratio.ratio_min", "ratio range must satisfy 0 < min < max < 1");
    require(cfg.ratio_total_power > 0.0, "sweep_ratio.total_power_mw", "must be > 0");
    require(cfg.ratio_time >= 0.0, "sweep_ratio.time_s", "must be >= 0");
    require(cfg.strength_sweep.steps >= 2, "sweep_strength.steps", "must be >= 2");
    const auto &sp = cfg.strength_sweep.parameter;
    require(sp == "r" || sp == "time_s" || sp == "g_dual_per_w_s", "sweep_strength.parameter",
            "unknown sweep parameter '" + sp + "' (expected r, time_s or g_dual_per_w_s)");
    require(cfg.strength_sweep.min <= cfg.strength_sweep.max, "sweep_strength.min", "must be <= max");
    require(sp != "g_dual_per_w_s" || cfg.strength_sweep.min >= 0.0, "sweep_strength.min", "gain must be >= 0");
    for (double r : cfg.r_values) {
        require(r >= 0.0, "entanglement.r_values", "r values must be >= 0");
    }
    require(cfg.correlation_time > 0.0, "entanglement.correlation_time_s", "must be > 0");
    require(cfg.correlation_threshold > 0.0, "entanglement.correlation_threshold", "must be > 0");
    require(cfg.oracle_time >= 0.0, "oracle.time_s", "must be >= 0");
    require(cfg.oracle_max_eps_t > 0.0 && cfg.oracle_max_eps_t <= 0.4, "oracle.max_eps_t", "must lie in (0, 0.4]");
    require(cfg.graph().max_strength() * cfg.oracle_time <= 0.4 + 1e-12, "oracle.time_s",
            "strongest coupling times oracle time exceeds 0.4");
    return cfg;
}

inline RunConfig parse_config(std::istream &in) {
    return build_config(read_config_entries(in));
}

inline RunConfig parse_config_text(const std::string &text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

}  // namespace fwm::cli
