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

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fwm/core.hpp"
#include "fwm/gaussian.hpp"
#include "fwm/interaction.hpp"

namespace fwm {

/// <n_j> = (Var x_j + Var p_j + <x_j>^2 + <p_j>^2 - 1) / 2
inline std::vector<double> mean_photon_numbers(const GaussianState &state) {
    std::vector<double> n(state.n_modes());
    for (std::size_t j = 0; j < n.size(); ++j) {
        const auto x = static_cast<Eigen::Index>(2 * j);
        const auto p = x + 1;
        n[j] = 0.5 * (state.cov(x, x) + state.cov(p, p) + state.mean(x) * state.mean(x) +
                      state.mean(p) * state.mean(p) - 1.0);
    }
    return n;
}

inline double total_photon_number(const GaussianState &state) {
    double total = 0.0;
    for (double n : mean_photon_numbers(state)) {
        total += n;
    }
    return total;
}

struct QuadratureVariance {
    double variance = 0.0;
    Vector coefficients;  // normalized
    double input_norm = 0.0;
};

/// Variance of c . r for the normalized coefficient vector c.
inline QuadratureVariance joint_quadrature_variance(const GaussianState &state, const Vector &coefficients) {
    if (coefficients.size() != state.mean.size()) {
        throw DimensionMismatch("coefficient vector has length " + std::to_string(coefficients.size()) +
                                ", expected " + std::to_string(state.mean.size()));
    }
    const double norm = coefficients.norm();
    if (!(norm > 0.0)) {
        throw ZeroVector("quadrature coefficients are all zero");
    }
    QuadratureVariance out;
    out.input_norm = norm;
    out.coefficients = coefficients / norm;
    out.variance = out.coefficients.dot(state.cov * out.coefficients);
    return out;
}

enum class PairQuadrature { XPlus, XMinus, PPlus, PMinus };

inline const char *to_string(PairQuadrature q) {
    switch (q) {
        case PairQuadrature::XPlus:
            return "x+x";
        case PairQuadrature::XMinus:
            return "x-x";
        case PairQuadrature::PPlus:
            return "p+p";
        case PairQuadrature::PMinus:
            return "p-p";
    }
    return "?";
}

struct PairSqueezing {
    double variance = 0.5;
    PairQuadrature combination = PairQuadrature::XPlus;
};

inline Vector pair_quadrature_coefficients(std::size_t n_modes, std::size_t i, std::size_t j, PairQuadrature q) {
    Vector c = Vector::Zero(static_cast<Eigen::Index>(2 * n_modes));
    const bool on_p = q == PairQuadrature::PPlus || q == PairQuadrature::PMinus;
    const bool minus = q == PairQuadrature::XMinus || q == PairQuadrature::PMinus;
    const auto off = on_p ? 1 : 0;
    c(static_cast<Eigen::Index>(2 * i) + off) = 1.0 / std::numbers::sqrt2;
    c(static_cast<Eigen::Index>(2 * j) + off) = (minus ? -1.0 : 1.0) / std::numbers::sqrt2;
    return c;
}

/// Smallest variance among (x_i +- x_j)/sqrt2 and (p_i +- p_j)/sqrt2. Values
/// below 1/2 are squeezed.
inline PairSqueezing two_mode_squeezing(const GaussianState &state, std::size_t i, std::size_t j) {
    const std::size_t n = state.n_modes();
    if (i >= n || j >= n) {
        throw IndexOutOfRange("mode pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") with " +
                              std::to_string(n) + " modes");
    }
    if (i == j) {
        throw InvalidArgument("two_mode_squeezing needs two distinct modes");
    }
    PairSqueezing best;
    bool first = true;
    for (auto q : {PairQuadrature::XPlus, PairQuadrature::XMinus, PairQuadrature::PPlus, PairQuadrature::PMinus}) {
        const Vector c = pair_quadrature_coefficients(n, i, j, q);
        const double v = c.dot(state.cov * c);
        if (first || v < best.variance) {
            best = {v, q};
            first = false;
        }
    }
    return best;
}

/// Base-2 logarithmic negativity across the cut (partition | rest).
///
/// The partial transpose flips p on every mode of `partition`.
inline double log_negativity(const GaussianState &state, std::span<const std::size_t> partition) {
    const std::size_t n = state.n_modes();
    if (partition.empty() || partition.size() >= n) {
        throw InvalidPartition("partition must be a proper non-empty subset of the " + std::to_string(n) + " modes");
    }
    std::vector<bool> seen(n, false);
    Vector flip = Vector::Ones(static_cast<Eigen::Index>(2 * n));
    for (auto m : partition) {
        if (m >= n) {
            throw InvalidPartition("mode " + std::to_string(m + 1) + " out of range");
        }
        if (seen[m]) {
            throw InvalidPartition("mode " + std::to_string(m + 1) + " listed twice");
        }
        seen[m] = true;
        flip(static_cast<Eigen::Index>(2 * m + 1)) = -1.0;
    }
    const Matrix transposed = flip.asDiagonal() * state.cov * flip.asDiagonal();
    double en = 0.0;
    for (double nu : symplectic_eigenvalues(transposed)) {
        if (nu < 0.5) {
            en -= std::log2(2.0 * nu);
        }
    }
    return en;
}

inline double log_negativity(const GaussianState &state, std::initializer_list<std::size_t> partition) {
    return log_negativity(state, std::span<const std::size_t>(partition.begin(), partition.size()));
}

/// Modes adjacent when their cross-covariance grows at first order in time.
class CorrelationGraph {
   public:
    CorrelationGraph(std::size_t n_modes, double threshold)
        : n_modes_(n_modes), threshold_(threshold), adjacent_(n_modes * n_modes, false) {
    }

    void connect(std::size_t i, std::size_t j) {
        if (i == j) {
            return;
        }
        adjacent_[i * n_modes_ + j] = true;
        adjacent_[j * n_modes_ + i] = true;
    }

    bool adjacent(std::size_t i, std::size_t j) const {
        return adjacent_[i * n_modes_ + j];
    }
    std::size_t n_modes() const {
        return n_modes_;
    }
    double threshold() const {
        return threshold_;
    }

    std::size_t degree(std::size_t i) const {
        std::size_t d = 0;
        for (std::size_t j = 0; j < n_modes_; ++j) {
            d += adjacent(i, j) ? 1 : 0;
        }
        return d;
    }

    /// Unordered pairs (i < j), lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < n_modes_; ++i) {
            for (std::size_t j = i + 1; j < n_modes_; ++j) {
                if (adjacent(i, j)) {
                    out.emplace_back(i, j);
                }
            }
        }
        return out;
    }

   private:
    std::size_t n_modes_;
    double threshold_;
    std::vector<bool> adjacent_;
};

/// Largest |entry| of the 2x2 covariance block between modes i and j.
inline double cross_covariance(const Matrix &cov, std::size_t i, std::size_t j) {
    return cov.block(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * j), 2, 2).cwiseAbs().maxCoeff();
}

/// Evolves `initial` for t_small and connects (i, j) when the cross-covariance
/// it acquired exceeds threshold * t_small.
inline CorrelationGraph correlation_graph(const GaussianState &initial, const GeneratorMatrix &gen, double t_small,
                                          double threshold) {
    if (!(t_small > 0.0)) {
        throw InvalidArgument("correlation probe time must be > 0");
    }
    const GaussianState evolved = evolve(initial, gen, t_small);
    const Matrix delta = evolved.cov - initial.cov;
    const std::size_t n = initial.n_modes();
    CorrelationGraph graph(n, threshold);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cross_covariance(delta, i, j) > threshold * t_small) {
                graph.connect(i, j);
            }
        }
    }
    return graph;
}

inline CorrelationGraph correlation_graph(const GeneratorMatrix &gen, double t_small, double threshold) {
    return correlation_graph(vacuum_state(gen.n_modes()), gen, t_small, threshold);
}

}  // namespace fwm
