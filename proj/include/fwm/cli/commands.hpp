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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fwm/cli/config.hpp"
#include "fwm/cli/parallel.hpp"
#include "fwm/cli/table.hpp"
#include "fwm/gaussian.hpp"
#include "fwm/geometry.hpp"
#include "fwm/interaction.hpp"
#include "fwm/metrics.hpp"
#include "fwm/oracle.hpp"

namespace fwm::cli {

enum ExitCode : int { kSuccess = 0, kNoSolution = 1, kConfigError = 2, kGuardTripped = 3 };

struct CommandResult {
    Table table;
    int exit_code = kSuccess;
};

inline std::string mode_list(std::span<const std::size_t> modes) {
    std::string s;
    for (auto m : modes) {
        s += std::to_string(m + 1);
    }
    return s;
}

/// "12|34" for partition {1,2} of four modes.
inline std::string partition_label(std::span<const std::size_t> part, std::size_t n_modes) {
    std::vector<std::size_t> rest;
    for (std::size_t m = 0; m < n_modes; ++m) {
        if (std::find(part.begin(), part.end(), m) == part.end()) {
            rest.push_back(m);
        }
    }
    return mode_list(part) + "|" + mode_list(rest);
}

inline CommandResult cmd_phase_match(const RunConfig &cfg) {
    const ModeGeometry g = solve_four_mode_geometry(cfg.pump, cfg.dispersion);
    const double k_pump = wavenumbers(cfg.dispersion, cfg.pump).pump;
    CommandResult res;
    res.table.header = {"quantity", "value"};
    auto row = [&](std::string name, Cell value) { res.table.add({str(std::move(name)), std::move(value)}); };
    row("cone_half_angle_probe_mrad", num(g.cone.probe * 1e3));
    row("cone_half_angle_conj_mrad", num(g.cone.conj * 1e3));
    row("crossing_angle_deg", num(2.0 * cfg.pump.half_cross_angle * 180.0 / std::numbers::pi));
    row("degenerate", num(g.degenerate ? 1 : 0));
    row("k_pump_rad_per_m", num(k_pump));
    row("total_residual_rad_per_m", num(g.total_residual));
    row("relative_residual", num(g.total_residual / k_pump));
    const char *pairs[] = {"14", "23", "13", "24"};
    for (int p = 0; p < 4; ++p) {
        row(std::string("pair_residual_") + pairs[p] + "_rad_per_m", num(g.pair_residuals[p]));
    }
    for (int m = 0; m < 4; ++m) {
        const std::string prefix = "mode" + std::to_string(m + 1) + "_";
        row(prefix + "dir_x", num(g.directions[m].x()));
        row(prefix + "dir_y", num(g.directions[m].y()));
        row(prefix + "dir_z", num(g.directions[m].z()));
        row(prefix + "azimuth_deg", num(g.azimuths[m] * 180.0 / std::numbers::pi));
        row(prefix + "freq_offset_ghz", num((g.frequencies[m] - cfg.pump.pump_frequency()) / (kTwoPi * 1e9)));
    }
    return res;
}

inline CommandResult cmd_evolve(const RunConfig &cfg) {
    const CouplingGraph graph = cfg.graph();
    const GaussianState state = evolve(vacuum_state(4), hamiltonian_generator(graph), cfg.evolve_time);
    CommandResult res;
    res.table.header = {"quantity", "value"};
    auto row = [&](std::string name, Cell value) { res.table.add({str(std::move(name)), std::move(value)}); };
    row("time_s", num(cfg.evolve_time));
    for (const auto &e : graph.edges()) {
        row("epsilon_" + std::to_string(e.i + 1) + std::to_string(e.j + 1) + "_per_s", num(e.epsilon));
    }
    row("dominant_gain_per_s", num(dominant_gain(graph)));
    const auto n = mean_photon_numbers(state);
    for (std::size_t j = 0; j < n.size(); ++j) {
        row("n_" + std::to_string(j + 1), num(n[j]));
    }
    row("n_total", num(total_photon_number(state)));
    for (const auto &part : cfg.partitions) {
        row("log_negativity_" + partition_label(part, 4), num(log_negativity(state, part)));
    }
    for (Eigen::Index i = 0; i < state.cov.rows(); ++i) {
        for (Eigen::Index j = i; j < state.cov.cols(); ++j) {
            row("cov_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), num(state.cov(i, j)));
        }
    }
    return res;
}

struct RatioRow {
    double ratio = 0.0;
    double power_a = 0.0;
    double power_b = 0.0;
    std::vector<double> photons;
    double total = 0.0;
    double dominant = 0.0;
};

/// Vacuum evolved for the sweep time at P_A = ratio * P, P_B = (1 - ratio) * P.
inline RatioRow ratio_sweep_point(const RunConfig &cfg, double ratio) {
    RatioRow row;
    row.ratio = ratio;
    row.power_a = ratio * cfg.ratio_total_power;
    row.power_b = (1.0 - ratio) * cfg.ratio_total_power;
    const CouplingGraph graph = coupling_graph_from_powers(row.power_a, row.power_b, cfg.g_single, cfg.g_dual);
    const GaussianState state = evolve(vacuum_state(4), hamiltonian_generator(graph), cfg.ratio_time);
    row.photons = mean_photon_numbers(state);
    row.total = total_photon_number(state);
    row.dominant = dominant_gain(graph);
    return row;
}

inline CommandResult cmd_sweep_ratio(const RunConfig &cfg, std::size_t workers) {
    const auto rows = ordered_parallel_map(cfg.ratio_sweep.steps, workers,
                                           [&](std::size_t i) { return ratio_sweep_point(cfg, cfg.ratio_sweep.value(i)); });
    CommandResult res;
    res.table.header = {"ratio", "power_a_mw", "power_b_mw", "n_1", "n_2", "n_3", "n_4", "n_total", "dominant_gain_per_s"};
    for (const auto &r : rows) {
        res.table.add({num(r.ratio), num(r.power_a * 1e3), num(r.power_b * 1e3), num(r.photons[0]), num(r.photons[1]),
                       num(r.photons[2]), num(r.photons[3]), num(r.total), num(r.dominant)});
    }
    return res;
}

inline CommandResult cmd_sweep_strength(const RunConfig &cfg, std::size_t workers) {
    const auto &spec = cfg.strength_sweep;
    struct Point {
        double value = 0.0;
        double time = 0.0;
        std::vector<double> photons;
        double total = 0.0;
        double dominant = 0.0;
        double en = 0.0;
        std::array<double, 3> squeezing{};
    };
    const auto points = ordered_parallel_map(spec.steps, workers, [&](std::size_t i) {
        Point p;
        p.value = spec.value(i);
        RunConfig local = cfg;
        if (spec.parameter == "g_dual_per_w_s") {
            local.g_dual = p.value;
        }
        const CouplingGraph graph = local.graph();
        if (spec.parameter == "r") {
            p.time = RunConfig::time_for_r(graph, p.value);
        } else if (spec.parameter == "time_s") {
            p.time = p.value;
        } else {
            p.time = cfg.evolve_time;
        }
        const GaussianState state = evolve(vacuum_state(4), hamiltonian_generator(graph), p.time);
        p.photons = mean_photon_numbers(state);
        p.total = total_photon_number(state);
        p.dominant = dominant_gain(graph);
        p.en = log_negativity(state, {0, 1});
        p.squeezing = {two_mode_squeezing(state, 0, 3).variance, two_mode_squeezing(state, 0, 2).variance,
                       two_mode_squeezing(state, 0, 1).variance};
        return p;
    });
    CommandResult res;
    res.table.header = {spec.parameter, "time_s",  "n_1",         "n_2",         "n_3",        "n_4", "n_total",
                        "dominant_gain_per_s", "log_negativity_12|34", "best_var_14", "best_var_13", "best_var_12"};
    for (const auto &p : points) {
        res.table.add({num(p.value), num(p.time), num(p.photons[0]), num(p.photons[1]), num(p.photons[2]),
                       num(p.photons[3]), num(p.total), num(p.dominant), num(p.en), num(p.squeezing[0]),
                       num(p.squeezing[1]), num(p.squeezing[2])});
    }
    return res;
}

inline CommandResult cmd_compare_configs(const RunConfig &cfg) {
    const auto candidates = enumerate_candidate_configs(cfg.pump, cfg.dispersion, cfg.g_single, cfg.g_dual);
    const RankingReport report = compare_configurations(candidates);
    CommandResult res;
    res.table.header = {"rank", "kind", "n_modes", "gain_score_per_s", "mode_degrees", "spectrum_per_s"};
    std::size_t rank = 1;
    for (const auto &r : report.ranking) {
        std::string degrees;
        for (auto d : r.degrees) {
            degrees += (degrees.empty() ? "" : " ") + std::to_string(d);
        }
        std::string spectrum;
        for (double s : r.spectrum) {
            spectrum += (spectrum.empty() ? "" : " ") + num(s).text;
        }
        res.table.add({num(rank++), str(to_string(r.kind)), num(r.degrees.size()), num(r.dominant_rate), str(degrees),
                       str(spectrum)});
    }
    return res;
}

inline CommandResult cmd_entanglement(const RunConfig &cfg) {
    const CouplingGraph graph = cfg.graph();
    const GeneratorMatrix gen = hamiltonian_generator(graph);
    CommandResult res;
    res.table.header = {"r", "stage", "metric", "subject", "value", "detail"};
    for (double r : cfg.r_values) {
        const GaussianState lossless = evolve(vacuum_state(4), gen, RunConfig::time_for_r(graph, r));
        const GaussianState lossy = apply_loss(lossless, cfg.tau);
        for (const auto &[stage, state] : {std::pair<const char *, const GaussianState &>{"lossless", lossless},
                                           std::pair<const char *, const GaussianState &>{"lossy", lossy}}) {
            const auto n = mean_photon_numbers(state);
            for (std::size_t j = 0; j < 4; ++j) {
                res.table.add({num(r), str(stage), str("mean_photons"), str(std::to_string(j + 1)), num(n[j]), str("")});
            }
            for (const auto &part : cfg.partitions) {
                res.table.add({num(r), str(stage), str("log_negativity"), str(partition_label(part, 4)),
                               num(log_negativity(state, part)), str("")});
            }
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = i + 1; j < 4; ++j) {
                    const PairSqueezing sq = two_mode_squeezing(state, i, j);
                    res.table.add({num(r), str(stage), str("two_mode_variance"),
                                   str(std::to_string(i + 1) + "-" + std::to_string(j + 1)), num(sq.variance),
                                   str(to_string(sq.combination))});
                }
            }
        }
    }
    const CorrelationGraph corr = correlation_graph(gen, cfg.correlation_time, cfg.correlation_threshold);
    for (const auto &[i, j] : corr.edges()) {
        res.table.add({str(""), str("generator"), str("correlation_edge"),
                       str(std::to_string(i + 1) + "-" + std::to_string(j + 1)), num(1), str("")});
    }
    return res;
}

inline CommandResult cmd_oracle_check(const RunConfig &cfg, std::uint64_t seed) {
    struct Case {
        std::string name;
        CouplingGraph graph;
        double time = 0.0;
    };
    std::vector<Case> cases{{"config", cfg.graph(), cfg.oracle_time}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < cfg.oracle_random_graphs; ++k) {
        std::array<double, 4> eps{};
        for (auto &e : eps) {
            e = cfg.oracle_max_eps_t * unit(rng);
        }
        cases.push_back({"random_" + std::to_string(k + 1), four_mode_graph(eps[0], eps[1], eps[2], eps[3]), 1.0});
    }
    FockLimits limits;
    limits.max_amplitudes = cfg.oracle_max_amplitudes;

    CommandResult res;
    res.table.header = {"graph", "eps_14", "eps_23", "eps_13", "eps_24", "time_s", "cutoff", "deviation", "leakage",
                        "pass"};
    for (const auto &c : cases) {
        const OracleComparison cmp = oracle_compare(c.graph, c.time, cfg.oracle_cutoff, limits);
        const bool pass = cmp.deviation <= 1e-3;
        if (!pass) {
            res.exit_code = kNoSolution;
        }
        res.table.add({str(c.name), num(c.graph.strength(0, 3)), num(c.graph.strength(1, 2)),
                       num(c.graph.strength(0, 2)), num(c.graph.strength(1, 3)), num(c.time), num(cfg.oracle_cutoff),
                       num(cmp.deviation), num(cmp.leakage), num(pass ? 1 : 0)});
    }
    return res;
}

inline const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"phase-match",     "evolve",       "sweep-ratio", "sweep-strength",
                                                "compare-configs", "entanglement", "oracle-check"};
    return names;
}

struct CliOptions {
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
};

inline CommandResult run_command(const CliOptions &opt, const RunConfig &cfg) {
    const auto &c = opt.command;
    if (c == "phase-match") {
        return cmd_phase_match(cfg);
    }
    if (c == "evolve") {
        return cmd_evolve(cfg);
    }
    if (c == "sweep-ratio") {
        return cmd_sweep_ratio(cfg, opt.workers);
    }
    if (c == "sweep-strength") {
        return cmd_sweep_strength(cfg, opt.workers);
    }
    if (c == "compare-configs") {
        return cmd_compare_configs(cfg);
    }
    if (c == "entanglement") {
        return cmd_entanglement(cfg);
    }
    if (c == "oracle-check") {
        return cmd_oracle_check(cfg, opt.seed);
    }
    throw ConfigError("unknown command '" + c + "'");
}

/// Full command-line entry point. Exit codes: 0 success, 1 no solution or a
/// failed check, 2 configuration or usage error, 3 size guard tripped.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Dual-pump four-wave-mixing mode simulator"};
    CliOptions opt;
    app.add_option("command", opt.command, "Subcommand")->required()->check(CLI::IsMember(command_names()));
    app.add_option("--config", opt.config_path, "Run configuration file (INI)");
    app.add_option("--out", opt.out_path, "Write the table here instead of stdout");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", opt.seed, "Seed for randomized checks");
    app.add_option("--workers", opt.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        const RunConfig cfg = opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
        const CommandResult res = run_command(opt, cfg);
        const std::string text = opt.format == "json" ? to_json(res.table) : to_csv(res.table);
        if (opt.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(opt.out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot write '" << opt.out_path << "'\n";
                return kConfigError;
            }
            file << text;
        }
        if (res.exit_code != kSuccess) {
            err << "error: check failed\n";
        }
        return res.exit_code;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NoSolution &e) {
        err << "no solution: " << e.what() << "\n";
        return kNoSolution;
    } catch (const DimensionGuard &e) {
        err << "guard tripped: " << e.what() << "\n";
        return kGuardTripped;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kNoSolution;
    }
}

}  // namespace fwm::cli
