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
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "fwm/core.hpp"
#include "fwm/interaction.hpp"

namespace fwm {

/// Gaussian state of N bosonic modes in quadrature ordering
/// (x1, p1, ..., xN, pN), with x = (a + a^dag)/sqrt(2) so that the vacuum has
/// covariance I/2.
struct GaussianState {
    Vector mean;
    Matrix cov;

    std::size_t n_modes() const {
        return static_cast<std::size_t>(mean.size() / 2);
    }
};

/// Linear quadrature map; symplectic when S Omega S^T = Omega.
///
/// Rounding S to Scalar leaves a residual of order ||S||^2 * epsilon, so
/// strongly amplifying maps need a wider Scalar to certify the condition.
template <typename Scalar>
struct BasicSymplecticTransform {
    using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    MatrixType s;
};

using SymplecticTransform = BasicSymplecticTransform<double>;

inline GaussianState vacuum_state(std::size_t n_modes) {
    if (n_modes == 0) {
        throw InvalidArgument("vacuum_state needs at least one mode");
    }
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return {Vector::Zero(dim), 0.5 * Matrix::Identity(dim, dim)};
}

/// ||S Omega S^T - Omega||_inf, evaluated in Scalar.
template <typename Scalar>
double symplectic_residual(const BasicSymplecticTransform<Scalar> &t) {
    using M = typename BasicSymplecticTransform<Scalar>::MatrixType;
    if (t.s.rows() != t.s.cols() || t.s.rows() % 2 != 0) {
        throw DimensionMismatch("symplectic transform must be square with even dimension");
    }
    const M omega = symplectic_form(static_cast<std::size_t>(t.s.rows() / 2)).template cast<Scalar>();
    const M r = t.s * omega * t.s.transpose() - omega;
    return static_cast<double>(r.cwiseAbs().rowwise().sum().maxCoeff());
}

/// Symplectic eigenvalues of a positive-definite covariance, ascending.
///
/// i V^{1/2} Omega V^{1/2} is Hermitian with eigenvalues +-nu_k.
inline std::vector<double> symplectic_eigenvalues(const Matrix &cov) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
        throw DimensionMismatch("covariance must be square with even dimension");
    }
    const Matrix sym = 0.5 * (cov + cov.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const Vector ev = es.eigenvalues().cwiseMax(0.0);
    const Matrix root = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    const Matrix omega = symplectic_form(static_cast<std::size_t>(cov.rows() / 2));
    const Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * (root * omega * root).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(herm, Eigen::EigenvaluesOnly);
    std::vector<double> all;
    for (Eigen::Index k = 0; k < es2.eigenvalues().size(); ++k) {
        all.push_back(std::abs(es2.eigenvalues()(k)));
    }
    std::sort(all.begin(), all.end());
    std::vector<double> nu;
    for (std::size_t k = 0; k < all.size(); k += 2) {
        nu.push_back(0.5 * (all[k] + all[k + 1]));
    }
    return nu;
}

/// Symmetric within 1e-12 and every symplectic eigenvalue >= 1/2 - 1e-9.
inline bool is_physical(const GaussianState &state) {
    const auto dim = state.mean.size();
    if (state.cov.rows() != dim || state.cov.cols() != dim || dim % 2 != 0 || dim == 0) {
        return false;
    }
    if (max_abs_entry(state.cov - state.cov.transpose()) > 1e-12 * std::max(1.0, max_abs_entry(state.cov))) {
        return false;
    }
    const auto nu = symplectic_eigenvalues(state.cov);
    return nu.front() >= 0.5 - 1e-9;
}

/// exp(K t) by scaling and squaring with a Pade approximant.
///
/// The result is checked against the symplectic condition. The residual is
/// measured relative to max(1, ||S||^2), the size of the entries of S Omega S^T,
/// and must stay below 1e-8.
template <typename Scalar = double>
BasicSymplecticTransform<Scalar> symplectic_exponential(const GeneratorMatrix &gen, double t) {
    if (!std::isfinite(t)) {
        throw InvalidArgument("evolution time must be finite");
    }
    using M = typename BasicSymplecticTransform<Scalar>::MatrixType;
    const M kt = gen.k.template cast<Scalar>() * static_cast<Scalar>(t);
    BasicSymplecticTransform<Scalar> out{kt.exp()};
    const double norm = static_cast<double>(out.s.cwiseAbs().rowwise().sum().maxCoeff());
    const double residual = symplectic_residual(out);
    if (!(residual <= 1e-8 * std::max(1.0, norm * norm))) {
        throw NonSymplectic("||S Omega S^T - Omega|| = " + std::to_string(residual));
    }
    return out;
}

inline GaussianState apply_symplectic(const GaussianState &state, const SymplecticTransform &t) {
    if (t.s.rows() != state.mean.size() || t.s.cols() != state.mean.size()) {
        throw DimensionMismatch("transform is " + std::to_string(t.s.rows()) + "x" + std::to_string(t.s.cols()) +
                                " but state has dimension " + std::to_string(state.mean.size()));
    }
    GaussianState out{t.s * state.mean, t.s * state.cov * t.s.transpose()};
    out.cov = 0.5 * (out.cov + out.cov.transpose());
    return out;
}

/// Heisenberg evolution for time t (negative t inverts).
inline GaussianState evolve(const GaussianState &state, const GeneratorMatrix &gen, double t) {
    if (gen.k.rows() != state.mean.size() || gen.k.cols() != state.mean.size()) {
        throw DimensionMismatch("generator is " + std::to_string(gen.k.rows()) + "x" + std::to_string(gen.k.cols()) +
                                " but state has dimension " + std::to_string(state.mean.size()));
    }
    return apply_symplectic(state, symplectic_exponential(gen, t));
}

/// Pure-loss channel: each mode passes a beam splitter of transmission
/// tau_j whose other port is vacuum.
inline GaussianState apply_loss(const GaussianState &state, std::span<const double> transmissions) {
    const std::size_t n = state.n_modes();
    if (transmissions.size() != n) {
        throw DimensionMismatch(std::to_string(transmissions.size()) + " transmissions for " + std::to_string(n) +
                                " modes");
    }
    Vector scale(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        const double tau = transmissions[j];
        if (!(tau >= 0.0 && tau <= 1.0)) {
            throw OutOfRange("transmission " + std::to_string(tau) + " on mode " + std::to_string(j + 1) +
                             " outside [0, 1]");
        }
        scale(static_cast<Eigen::Index>(2 * j)) = std::sqrt(tau);
        scale(static_cast<Eigen::Index>(2 * j + 1)) = std::sqrt(tau);
    }
    GaussianState out;
    out.mean = scale.cwiseProduct(state.mean);
    out.cov = scale.asDiagonal() * state.cov * scale.asDiagonal();
    for (Eigen::Index k = 0; k < scale.size(); ++k) {
        out.cov(k, k) += 0.5 * (1.0 - scale(k) * scale(k));
    }
    return out;
}

inline GaussianState apply_loss(const GaussianState &state, double tau) {
    const std::vector<double> taus(state.n_modes(), tau);
    return apply_loss(state, taus);
}

}  // namespace fwm
