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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fwm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Base class of every error raised by the library. The `kind()` string is
/// stable and used by the CLI to pick exit codes.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string &what) : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {
    }
    const std::string &kind() const noexcept {
        return kind_;
    }

   private:
    std::string kind_;
};

#define FWM_DEFINE_ERROR(Name)                                                    \
    struct Name : Error {                                                         \
        explicit Name(const std::string &what) : Error(#Name, what) {             \
        }                                                                         \
    }

FWM_DEFINE_ERROR(InvalidArgument);
FWM_DEFINE_ERROR(NoSolution);
FWM_DEFINE_ERROR(NonRealSpectrum);
FWM_DEFINE_ERROR(DimensionMismatch);
FWM_DEFINE_ERROR(NonSymplectic);
FWM_DEFINE_ERROR(OutOfRange);
FWM_DEFINE_ERROR(ZeroVector);
FWM_DEFINE_ERROR(IndexOutOfRange);
FWM_DEFINE_ERROR(InvalidPartition);
FWM_DEFINE_ERROR(DimensionGuard);

#undef FWM_DEFINE_ERROR

/// Symplectic form for quadrature ordering (x1, p1, ..., xN, pN): block
/// diagonal with 2x2 blocks [[0, 1], [-1, 0]].
inline Matrix symplectic_form(std::size_t n_modes) {
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (std::size_t j = 0; j < n_modes; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    return omega;
}

/// Induced infinity norm (maximum absolute row sum).
inline double inf_norm(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline double max_abs_entry(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace fwm
