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
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fwm/core.hpp"

namespace fwm {

/// Two-mode-squeezing term eps * (a_i^dag a_j^dag - a_i a_j), with i < j.
/// Mode indices are zero-based; mode "1" of the four-mode picture is index 0.
struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double epsilon = 0.0;  // 1/s
};

/// Quadratic parametric coupling between bosonic modes. Edges are stored
/// with i < j; endpoints given in the other order are swapped on insertion.
class CouplingGraph {
   public:
    CouplingGraph() = default;

    explicit CouplingGraph(std::size_t n_modes) : n_modes_(n_modes) {
    }

    CouplingGraph(std::size_t n_modes, std::span<const Edge> edges) : n_modes_(n_modes) {
        for (const auto &e : edges) {
            add_edge(e.i, e.j, e.epsilon);
        }
    }

    CouplingGraph(std::size_t n_modes, std::initializer_list<Edge> edges)
        : CouplingGraph(n_modes, std::span<const Edge>(edges.begin(), edges.size())) {
    }

    void add_edge(std::size_t i, std::size_t j, double epsilon) {
        if (i == j) {
            throw InvalidArgument("self-edge on mode " + std::to_string(i));
        }
        if (i >= n_modes_ || j >= n_modes_) {
            throw InvalidArgument("edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                                  std::to_string(n_modes_) + " modes");
        }
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
            throw InvalidArgument("edge strength must be finite and >= 0");
        }
        if (i > j) {
            std::swap(i, j);
        }
        for (const auto &e : edges_) {
            if (e.i == i && e.j == j) {
                throw InvalidArgument("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        edges_.push_back({i, j, epsilon});
    }

    std::size_t n_modes() const noexcept {
        return n_modes_;
    }
    const std::vector<Edge> &edges() const noexcept {
        return edges_;
    }

    /// Strength on edge {i, j}, or 0 if the pair is not coupled.
    double strength(std::size_t i, std::size_t j) const {
        if (i > j) {
            std::swap(i, j);
        }
        for (const auto &e : edges_) {
            if (e.i == i && e.j == j) {
                return e.epsilon;
            }
        }
        return 0.0;
    }

    double max_strength() const {
        double m = 0.0;
        for (const auto &e : edges_) {
            m = std::max(m, e.epsilon);
        }
        return m;
    }

    /// Number of edges incident on each mode.
    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(n_modes_, 0);
        for (const auto &e : edges_) {
            ++d[e.i];
            ++d[e.j];
        }
        return d;
    }

    /// Same coupling with every strength multiplied by `factor` (>= 0).
    CouplingGraph scaled(double factor) const {
        CouplingGraph g(n_modes_);
        for (const auto &e : edges_) {
            g.add_edge(e.i, e.j, e.epsilon * factor);
        }
        return g;
    }

   private:
    std::size_t n_modes_ = 0;
    std::vector<Edge> edges_;
};

/// The general four-mode interaction with modes numbered clockwise from the
/// top left: single-pump pairs (1,4) and (2,3), dual-pump pairs (1,3) and (2,4).
inline CouplingGraph four_mode_graph(double eps_a, double eps_b, double eps_c, double eps_d) {
    return CouplingGraph(4, {{0, 3, eps_a}, {1, 2, eps_b}, {0, 2, eps_c}, {1, 3, eps_d}});
}

/// Four-mode interaction for balanced pumps.
inline CouplingGraph symmetric_four_mode_graph(double eps_single, double eps_dual) {
    return four_mode_graph(eps_single, eps_single, eps_dual, eps_dual);
}

/// Single-pump strengths scale with that pump's power; dual-pump strengths
/// take one photon from each pump and scale with sqrt(P_A * P_B).
inline CouplingGraph coupling_graph_from_powers(double power_a, double power_b, double g_single, double g_dual) {
    if (!(power_a >= 0.0) || !(power_b >= 0.0) || !(g_single >= 0.0) || !(g_dual >= 0.0)) {
        throw InvalidArgument("pump powers and gains must be >= 0");
    }
    const double eps_dual = g_dual * std::sqrt(power_a * power_b);
    return four_mode_graph(g_single * power_a, g_single * power_b, eps_dual, eps_dual);
}

/// Heisenberg-picture generator K with d/dt r = K r on (x1, p1, ..., xN, pN).
struct GeneratorMatrix {
    Matrix k;

    std::size_t n_modes() const {
        return static_cast<std::size_t>(k.rows() / 2);
    }
};

/// For an edge (i, j, eps): dx_i/dt = eps x_j and dp_i/dt = -eps p_j, and
/// symmetrically for j.
inline GeneratorMatrix hamiltonian_generator(const CouplingGraph &graph) {
    const auto n = static_cast<Eigen::Index>(graph.n_modes());
    GeneratorMatrix gen{Matrix::Zero(2 * n, 2 * n)};
    for (const auto &e : graph.edges()) {
        const auto xi = static_cast<Eigen::Index>(2 * e.i);
        const auto xj = static_cast<Eigen::Index>(2 * e.j);
        gen.k(xi, xj) += e.epsilon;
        gen.k(xj, xi) += e.epsilon;
        gen.k(xi + 1, xj + 1) -= e.epsilon;
        gen.k(xj + 1, xi + 1) -= e.epsilon;
    }
    return gen;
}

/// ||K Omega + Omega K^T||_inf; zero for members of the symplectic algebra.
inline double symplectic_algebra_residual(const GeneratorMatrix &gen) {
    const Matrix omega = symplectic_form(gen.n_modes());
    return inf_norm(gen.k * omega + omega * gen.k.transpose());
}

/// Real growth rates of the generator sorted in descending order. The first
/// entry is the dominant rate (the gain score).
inline std::vector<double> gain_spectrum(const GeneratorMatrix &gen) {
    if (gen.k.rows() == 0) {
        return {};
    }
    const double scale = inf_norm(gen.k);
    Eigen::EigenSolver<Matrix> solver(gen.k, false);
    if (solver.info() != Eigen::Success) {
        throw NonRealSpectrum("eigenvalue iteration did not converge");
    }
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(gen.k.rows()));
    for (const auto &ev : solver.eigenvalues()) {
        if (std::abs(ev.imag()) > 1e-8 * scale) {
            throw NonRealSpectrum("eigenvalue with imaginary part " + std::to_string(ev.imag()));
        }
        rates.push_back(ev.real());
    }
    std::sort(rates.begin(), rates.end(), std::greater<>());
    return rates;
}

inline std::vector<double> gain_spectrum(const CouplingGraph &graph) {
    return gain_spectrum(hamiltonian_generator(graph));
}

inline double dominant_gain(const CouplingGraph &graph) {
    const auto rates = gain_spectrum(graph);
    return rates.empty() ? 0.0 : std::max(0.0, rates.front());
}

enum class ConfigKind { FourMode, SixMode };

inline const char *to_string(ConfigKind kind) {
    return kind == ConfigKind::FourMode ? "FourMode" : "SixMode";
}

/// A proposed set of output directions, the coupling it induces and its
/// dominant growth rate.
struct CandidateConfig {
    ConfigKind kind = ConfigKind::FourMode;
    std::vector<Vec3> directions;
    CouplingGraph graph;
    double gain_score = 0.0;  // 1/s
};

struct RankedCandidate {
    std::size_t input_index = 0;
    ConfigKind kind = ConfigKind::FourMode;
    double dominant_rate = 0.0;
    std::vector<double> spectrum;
    std::vector<std::size_t> degrees;
};

struct RankingReport {
    std::vector<RankedCandidate> ranking;  // best first
};

/// Growth rates quantized to 1e-12 of the largest magnitude, so that rates
/// equal up to eigensolver round-off compare as ties.
inline std::vector<long long> rate_ranking_keys(std::span<const double> rates) {
    double scale = 0.0;
    for (double r : rates) {
        scale = std::max(scale, std::abs(r));
    }
    const double quantum = scale > 0.0 ? 1e-12 * scale : 1.0;
    std::vector<long long> keys;
    keys.reserve(rates.size());
    for (double r : rates) {
        keys.push_back(std::llround(r / quantum));
    }
    return keys;
}

/// Ranks candidates by dominant growth rate. Ties keep input order.
inline RankingReport compare_configurations(std::span<const CandidateConfig> candidates) {
    if (candidates.size() < 2) {
        throw InvalidArgument("need at least two candidates to compare");
    }
    RankingReport report;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const auto &c = candidates[idx];
        RankedCandidate r;
        r.input_index = idx;
        r.kind = c.kind;
        r.spectrum = gain_spectrum(c.graph);
        r.dominant_rate = r.spectrum.empty() ? 0.0 : std::max(0.0, r.spectrum.front());
        r.degrees = c.graph.degrees();
        report.ranking.push_back(std::move(r));
    }
    std::vector<double> rates;
    for (const auto &r : report.ranking) {
        rates.push_back(r.dominant_rate);
    }
    const auto keys = rate_ranking_keys(rates);
    std::vector<std::size_t> order(keys.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
    RankingReport sorted;
    for (auto k : order) {
        sorted.ranking.push_back(std::move(report.ranking[k]));
    }
    return sorted;
}

}  // namespace fwm
