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

// Brute-force check of the Gaussian engine: the pair-creation Hamiltonian is
// applied to a state vector in a truncated Fock space, and quadrature moments
// are read off from ladder-operator matrix elements. Nothing here depends on
// the symplectic machinery except oracle_compare, which calls both engines.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fwm/core.hpp"
#include "fwm/gaussian.hpp"
#include "fwm/interaction.hpp"

namespace fwm {

using Complex = std::complex<double>;

struct FockLimits {
    std::size_t max_modes = 4;
    std::size_t max_cutoff = 14;
    std::size_t max_amplitudes = 15 * 15 * 15 * 15;
};

/// Occupation basis |n_1, ..., n_N>, n_j <= cutoff; index = sum n_j (cutoff+1)^j.
class FockBasis {
   public:
    FockBasis(std::size_t n_modes, std::size_t cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
        strides_.resize(n_modes);
        std::size_t stride = 1;
        for (std::size_t j = 0; j < n_modes; ++j) {
            strides_[j] = stride;
            stride *= cutoff + 1;
        }
        size_ = stride;
        occupations_.resize(size_ * n_modes);
        for (std::size_t idx = 0; idx < size_; ++idx) {
            std::size_t rest = idx;
            for (std::size_t j = 0; j < n_modes; ++j) {
                occupations_[idx * n_modes + j] = static_cast<std::uint8_t>(rest % (cutoff + 1));
                rest /= cutoff + 1;
            }
        }
    }

    std::size_t size() const {
        return size_;
    }
    std::size_t n_modes() const {
        return n_modes_;
    }
    std::size_t cutoff() const {
        return cutoff_;
    }
    std::size_t stride(std::size_t mode) const {
        return strides_[mode];
    }
    std::size_t occupation(std::size_t idx, std::size_t mode) const {
        return occupations_[idx * n_modes_ + mode];
    }

   private:
    std::size_t n_modes_;
    std::size_t cutoff_;
    std::size_t size_ = 0;
    std::vector<std::size_t> strides_;
    std::vector<std::uint8_t> occupations_;
};

struct FockState {
    std::size_t n_modes = 0;
    std::size_t cutoff = 0;
    std::vector<Complex> amplitudes;
    /// Population on basis states with some mode at the cutoff. The truncated
    /// generator is anti-Hermitian, so the norm itself cannot show truncation.
    double leakage = 0.0;
    /// |1 - ||psi||^2| after integration.
    double norm_defect = 0.0;
};

namespace detail {

/// out = G psi with G = sum_e eps_e (a_i^dag a_j^dag - a_i a_j), truncated.
inline void apply_pair_generator(const FockBasis &basis, const CouplingGraph &graph, const std::vector<Complex> &psi,
                                 std::vector<Complex> &out) {
    std::fill(out.begin(), out.end(), Complex{});
    const std::size_t cutoff = basis.cutoff();
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        const Complex amp = psi[idx];
        if (amp == Complex{}) {
            continue;
        }
        for (const auto &e : graph.edges()) {
            const std::size_t ni = basis.occupation(idx, e.i);
            const std::size_t nj = basis.occupation(idx, e.j);
            const std::size_t shift = basis.stride(e.i) + basis.stride(e.j);
            if (ni < cutoff && nj < cutoff) {
                out[idx + shift] += e.epsilon * std::sqrt(static_cast<double>((ni + 1) * (nj + 1))) * amp;
            }
            if (ni > 0 && nj > 0) {
                out[idx - shift] -= e.epsilon * std::sqrt(static_cast<double>(ni * nj)) * amp;
            }
        }
    }
}

/// a_mode psi
inline std::vector<Complex> apply_lowering(const FockBasis &basis, std::size_t mode, const std::vector<Complex> &psi) {
    std::vector<Complex> out(basis.size());
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        const std::size_t n = basis.occupation(idx, mode);
        if (n > 0) {
            out[idx - basis.stride(mode)] += std::sqrt(static_cast<double>(n)) * psi[idx];
        }
    }
    return out;
}

inline Complex inner(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    Complex s{};
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

inline double squared_norm(const std::vector<Complex> &v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return s;
}

inline void check_limits(const CouplingGraph &graph, std::size_t cutoff, const FockLimits &limits) {
    if (graph.n_modes() == 0) {
        throw InvalidArgument("graph has no modes");
    }
    if (graph.n_modes() > limits.max_modes) {
        throw DimensionGuard(std::to_string(graph.n_modes()) + " modes exceeds the limit of " +
                             std::to_string(limits.max_modes));
    }
    if (cutoff > limits.max_cutoff) {
        throw DimensionGuard("cutoff " + std::to_string(cutoff) + " exceeds the limit of " +
                             std::to_string(limits.max_cutoff));
    }
    double size = 1.0;
    for (std::size_t j = 0; j < graph.n_modes(); ++j) {
        size *= static_cast<double>(cutoff + 1);
    }
    if (size > static_cast<double>(limits.max_amplitudes)) {
        throw DimensionGuard(std::to_string(static_cast<std::uint64_t>(size)) + " amplitudes exceeds the ceiling of " +
                             std::to_string(limits.max_amplitudes));
    }
}

}  // namespace detail

/// exp(t G) applied to the vacuum, with G the truncated pair-creation
/// generator. Integration uses Taylor series on sub-steps with ||G dt|| <= 1,
/// each summed until the terms drop below 1e-18.
inline FockState fock_evolve(const CouplingGraph &graph, double t, std::size_t cutoff, const FockLimits &limits = {}) {
    detail::check_limits(graph, cutoff, limits);
    if (!std::isfinite(t)) {
        throw InvalidArgument("evolution time must be finite");
    }
    const FockBasis basis(graph.n_modes(), cutoff);
    FockState fs;
    fs.n_modes = graph.n_modes();
    fs.cutoff = cutoff;
    fs.amplitudes.assign(basis.size(), Complex{});
    fs.amplitudes[0] = 1.0;

    // Each ladder pair contributes at most cutoff per row in either direction.
    double bound = 0.0;
    for (const auto &e : graph.edges()) {
        bound += 2.0 * e.epsilon * static_cast<double>(std::max<std::size_t>(cutoff, 1));
    }
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(t) * bound));
    if (steps > 0) {
        const double dt = t / static_cast<double>(steps);
        std::vector<Complex> term(basis.size());
        std::vector<Complex> next(basis.size());
        for (std::size_t s = 0; s < steps; ++s) {
            term = fs.amplitudes;
            for (int order = 1; order < 200; ++order) {
                detail::apply_pair_generator(basis, graph, term, next);
                const double scale = dt / order;
                double term_norm = 0.0;
                for (std::size_t k = 0; k < next.size(); ++k) {
                    next[k] *= scale;
                    fs.amplitudes[k] += next[k];
                    term_norm += std::norm(next[k]);
                }
                std::swap(term, next);
                if (std::sqrt(term_norm) < 1e-18) {
                    break;
                }
            }
        }
    }

    fs.norm_defect = std::abs(1.0 - detail::squared_norm(fs.amplitudes));
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        for (std::size_t j = 0; j < fs.n_modes; ++j) {
            if (basis.occupation(idx, j) == cutoff) {
                fs.leakage += std::norm(fs.amplitudes[idx]);
                break;
            }
        }
    }
    return fs;
}

/// Amplitude of |n_1, ..., n_N>.
inline Complex fock_amplitude(const FockState &fs, std::span<const std::size_t> occupations) {
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < fs.n_modes; ++j) {
        if (occupations[j] > fs.cutoff) {
            return {};
        }
        idx += occupations[j] * stride;
        stride *= fs.cutoff + 1;
    }
    return fs.amplitudes[idx];
}

struct FockMoments {
    Vector mean;
    Matrix cov;
};

/// First and second quadrature moments in the GaussianState convention.
inline FockMoments fock_covariance(const FockState &fs) {
    const FockBasis basis(fs.n_modes, fs.cutoff);
    const std::size_t n = fs.n_modes;
    const auto &psi = fs.amplitudes;

    std::vector<std::vector<Complex>> lowered(n);
    for (std::size_t j = 0; j < n; ++j) {
        lowered[j] = detail::apply_lowering(basis, j, psi);
    }
    std::vector<Complex> alpha(n);
    for (std::size_t j = 0; j < n; ++j) {
        alpha[j] = detail::inner(psi, lowered[j]);
    }

    FockMoments out{Vector::Zero(static_cast<Eigen::Index>(2 * n)),
                    Matrix::Zero(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n))};
    for (std::size_t j = 0; j < n; ++j) {
        out.mean(static_cast<Eigen::Index>(2 * j)) = std::sqrt(2.0) * alpha[j].real();
        out.mean(static_cast<Eigen::Index>(2 * j + 1)) = std::sqrt(2.0) * alpha[j].imag();
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // M = <a_i a_j>, N = <a_i^dag a_j>
            const Complex m = detail::inner(psi, detail::apply_lowering(basis, i, lowered[j]));
            const Complex nn = detail::inner(lowered[i], lowered[j]);
            const double delta = i == j ? 0.5 : 0.0;
            const auto xi = static_cast<Eigen::Index>(2 * i);
            const auto xj = static_cast<Eigen::Index>(2 * j);
            out.cov(xi, xj) = m.real() + nn.real() + delta - out.mean(xi) * out.mean(xj);
            out.cov(xi + 1, xj + 1) = -m.real() + nn.real() + delta - out.mean(xi + 1) * out.mean(xj + 1);
            out.cov(xi, xj + 1) = m.imag() + nn.imag() - out.mean(xi) * out.mean(xj + 1);
            out.cov(xi + 1, xj) = m.imag() - nn.imag() - out.mean(xi + 1) * out.mean(xj);
        }
    }
    return out;
}

inline double fock_total_photons(const FockState &fs) {
    const FockBasis basis(fs.n_modes, fs.cutoff);
    double total = 0.0;
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < fs.n_modes; ++j) {
            count += basis.occupation(idx, j);
        }
        total += static_cast<double>(count) * std::norm(fs.amplitudes[idx]);
    }
    return total;
}

/// Population of basis states with an odd total photon number.
inline double odd_parity_population(const FockState &fs) {
    const FockBasis basis(fs.n_modes, fs.cutoff);
    double total = 0.0;
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < fs.n_modes; ++j) {
            count += basis.occupation(idx, j);
        }
        if (count % 2 == 1) {
            total += std::norm(fs.amplitudes[idx]);
        }
    }
    return total;
}

struct OracleComparison {
    double deviation = 0.0;  // max entrywise |V_fock - V_gauss|, means included
    double leakage = 0.0;
    double norm_defect = 0.0;
};

inline OracleComparison oracle_compare(const CouplingGraph &graph, double t, std::size_t cutoff,
                                       const FockLimits &limits = {}) {
    const FockState fs = fock_evolve(graph, t, cutoff, limits);
    const FockMoments fock = fock_covariance(fs);
    const GaussianState gauss = evolve(vacuum_state(graph.n_modes()), hamiltonian_generator(graph), t);
    OracleComparison out;
    out.deviation = std::max(max_abs_entry(fock.cov - gauss.cov), (fock.mean - gauss.mean).cwiseAbs().maxCoeff());
    out.leakage = fs.leakage;
    out.norm_defect = fs.norm_defect;
    return out;
}

}  // namespace fwm
