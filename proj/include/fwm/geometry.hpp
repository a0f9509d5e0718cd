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
#include <vector>

#include <unsupported/Eigen/NonLinearOptimization>

#include "fwm/core.hpp"
#include "fwm/interaction.hpp"

namespace fwm {

/// Two pumps of equal frequency crossing in the horizontal (x-z) plane at
/// +-half_cross_angle about the z axis. Pump A is on the -x side.
struct PumpConfig {
    double wavelength_vacuum = 795e-9;                  // m
    double half_cross_angle = 0.45 * std::numbers::pi / 180.0;  // rad
    double power_a = 0.1;                               // W
    double power_b = 0.1;                               // W
    double detuning = 0.0;                              // rad/s, carried but unused

    void validate() const {
        if (!(wavelength_vacuum > 0.0) || !std::isfinite(wavelength_vacuum)) {
            throw InvalidArgument("pump wavelength must be > 0");
        }
        if (!(half_cross_angle >= 0.0 && half_cross_angle < std::numbers::pi / 2)) {
            throw InvalidArgument("half crossing angle must lie in [0, pi/2)");
        }
        if (!(power_a >= 0.0) || !(power_b >= 0.0)) {
            throw InvalidArgument("pump powers must be >= 0");
        }
    }

    double pump_frequency() const {
        return kTwoPi * kSpeedOfLight / wavelength_vacuum;
    }
};

/// Refractive indices at the pump, probe (omega_p - offset) and conjugate
/// (omega_p + offset) frequencies.
struct DispersionParams {
    double n_pump = 1.0;
    double n_probe = 1.0;
    double n_conj = 1.0;
    double freq_offset = 0.0;  // rad/s

    void validate() const {
        for (double n : {n_pump, n_probe, n_conj}) {
            if (!(n >= 1.0 - 1e-3) || !std::isfinite(n)) {
                throw InvalidArgument("refractive indices must be >= 1 - 1e-3");
            }
        }
        if (!(freq_offset >= 0.0) || !std::isfinite(freq_offset)) {
            throw InvalidArgument("frequency offset must be >= 0");
        }
    }
};

/// Probe index raised above unity so that a 795 nm pump with +-3 GHz
/// sidebands phase-matches on an 8.0 mrad cone.
inline DispersionParams calibrated_default_dispersion() {
    return {1.0, 1.000064, 1.0, kTwoPi * 3e9};
}

struct Wavevector {
    Vec3 k = Vec3::Zero();  // rad/m

    /// Wavevector of magnitude n omega / c along `direction` (normalized here).
    static Wavevector along(const Vec3 &direction, double index, double omega) {
        return {direction.normalized() * (index * omega / kSpeedOfLight)};
    }
    double magnitude() const {
        return k.norm();
    }
};

/// Sum of pump wavevectors minus sum of output wavevectors.
inline Vec3 phase_mismatch(std::span<const Wavevector> pump_ks, std::span<const Wavevector> out_ks) {
    if (pump_ks.empty() || out_ks.empty()) {
        throw InvalidArgument("phase_mismatch needs non-empty wavevector lists");
    }
    Vec3 d = Vec3::Zero();
    for (const auto &w : pump_ks) {
        d += w.k;
    }
    for (const auto &w : out_ks) {
        d -= w.k;
    }
    return d;
}

inline Vec3 phase_mismatch(std::initializer_list<Wavevector> pump_ks, std::initializer_list<Wavevector> out_ks) {
    return phase_mismatch(std::span<const Wavevector>(pump_ks.begin(), pump_ks.size()),
                          std::span<const Wavevector>(out_ks.begin(), out_ks.size()));
}

/// Wavenumbers of the three frequencies in the medium.
struct Wavenumbers {
    double pump = 0.0;
    double probe = 0.0;
    double conj = 0.0;
};

inline Wavenumbers wavenumbers(const DispersionParams &disp, const PumpConfig &pump) {
    const double w = pump.pump_frequency();
    return {disp.n_pump * w / kSpeedOfLight, disp.n_probe * (w - disp.freq_offset) / kSpeedOfLight,
            disp.n_conj * (w + disp.freq_offset) / kSpeedOfLight};
}

/// Emission angles from a single pump, measured from the pump axis.
struct ConeAngles {
    double probe = 0.0;  // rad
    double conj = 0.0;   // rad
};

namespace detail {

/// Longitudinal residual k_pr cos(th) + k_c cos(th_c) - 2 k_p, with th_c fixed
/// by transverse balance. Written with 1 - cos = 2 sin^2(./2) to avoid
/// cancellation at small angles.
inline double cone_residual(const Wavenumbers &k, double theta_probe) {
    const double s = std::sin(0.5 * theta_probe);
    const double theta_conj = std::asin(std::min(1.0, k.probe / k.conj * std::sin(theta_probe)));
    const double sc = std::sin(0.5 * theta_conj);
    return (k.probe + k.conj - 2.0 * k.pump) - 2.0 * k.probe * s * s - 2.0 * k.conj * sc * sc;
}

}  // namespace detail

/// Solves the single-pump matching pair
///   k_pr cos(th_pr) + k_c cos(th_c) = 2 k_p,   k_pr sin(th_pr) = k_c sin(th_c)
/// by bisection on th_pr.
inline ConeAngles cone_angles(const DispersionParams &disp, const PumpConfig &pump) {
    disp.validate();
    pump.validate();
    const Wavenumbers k = wavenumbers(disp, pump);
    const double lo_res = detail::cone_residual(k, 0.0);
    if (lo_res == 0.0) {
        return {0.0, 0.0};
    }
    double hi = k.probe > k.conj ? std::asin(k.conj / k.probe) : std::numbers::pi / 2;
    const double hi_res = detail::cone_residual(k, hi);
    if (!(lo_res > 0.0 && hi_res <= 0.0)) {
        throw NoSolution("cone residual has no sign change on [0, " + std::to_string(hi) +
                         "] rad: residual(0) = " + std::to_string(lo_res) +
                         " rad/m, residual(hi) = " + std::to_string(hi_res) + " rad/m");
    }
    double lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (detail::cone_residual(k, mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double theta = std::abs(detail::cone_residual(k, lo)) < std::abs(detail::cone_residual(k, hi)) ? lo : hi;
    const double residual = detail::cone_residual(k, theta);
    if (std::abs(residual) > 1e-12 * 2.0 * k.pump) {
        throw NoSolution("bisection stalled with residual " + std::to_string(residual) + " rad/m");
    }
    return {theta, std::asin(std::min(1.0, k.probe / k.conj * std::sin(theta)))};
}

/// Probe emission angle of the single-pump cone.
inline double cone_half_angle(const DispersionParams &disp, const PumpConfig &pump) {
    return cone_angles(disp, pump).probe;
}

enum class Pump { A, B };

inline Vec3 pump_direction(const PumpConfig &pump, Pump which) {
    const double s = std::sin(pump.half_cross_angle);
    const double c = std::cos(pump.half_cross_angle);
    return which == Pump::A ? Vec3(-s, 0.0, c) : Vec3(s, 0.0, c);
}

/// Direction at polar angle theta about `axis` (which must lie in the x-z
/// plane) and azimuth phi, where phi = 0 leans toward +x and phi = pi/2 is up.
inline Vec3 cone_direction(const Vec3 &axis, double theta, double phi) {
    const Vec3 horizontal(axis.z(), 0.0, -axis.x());
    const Vec3 vertical(0.0, 1.0, 0.0);
    return std::cos(theta) * axis + std::sin(theta) * (std::cos(phi) * horizontal + std::sin(phi) * vertical);
}

inline Vec3 mirror_x(const Vec3 &v) {
    return {-v.x(), v.y(), v.z()};
}

/// Output modes numbered clockwise from the top left: 1 above pump A,
/// 2 above pump B, 3 below pump B, 4 below pump A. Modes 1 and 2 carry the
/// probe frequency, 3 and 4 the conjugate.
struct ModeGeometry {
    std::array<Vec3, 4> directions;
    std::array<double, 4> frequencies{};  // rad/s
    std::array<double, 4> azimuths{};     // rad, about the mode's own pump
    std::array<Wavevector, 4> wavevectors;
    std::array<Wavevector, 2> pump_wavevectors;  // A, B
    ConeAngles cone;
    /// Mismatch norms for pairs (1,4), (2,3), (1,3), (2,4), in rad/m.
    std::array<double, 4> pair_residuals{};
    double total_residual = 0.0;  // sqrt of the summed squares, rad/m
    bool degenerate = false;      // pumps collinear
};

struct GeometrySolverOptions {
    double residual_ceiling = 1e-3;  // relative to |k_pump|
    int max_evaluations = 2000;
};

namespace detail {

struct FourModeProblem {
    std::array<Vec3, 2> pump_axis;      // A, B
    std::array<Wavevector, 2> pump_k;   // A, B
    std::array<double, 4> theta{};      // cone angle of each mode
    std::array<int, 4> pump_of{0, 1, 1, 0};
    std::array<double, 4> k_mode{};
    double k_ref = 1.0;

    std::array<Wavevector, 4> wavevectors(const Eigen::VectorXd &phi) const {
        std::array<Wavevector, 4> out;
        for (int m = 0; m < 4; ++m) {
            out[m].k = k_mode[m] * cone_direction(pump_axis[pump_of[m]], theta[m], phi(m));
        }
        return out;
    }

    /// Mismatch of (1,4), (2,3), (1,3), (2,4) stacked, scaled by 1/k_ref.
    Eigen::VectorXd residuals(const Eigen::VectorXd &phi) const {
        const auto k = wavevectors(phi);
        const Vec3 a = pump_k[0].k;
        const Vec3 b = pump_k[1].k;
        Eigen::VectorXd r(12);
        r.segment<3>(0) = (2.0 * a - k[0].k - k[3].k) / k_ref;
        r.segment<3>(3) = (2.0 * b - k[1].k - k[2].k) / k_ref;
        r.segment<3>(6) = (a + b - k[0].k - k[2].k) / k_ref;
        r.segment<3>(9) = (a + b - k[1].k - k[3].k) / k_ref;
        return r;
    }
};

struct FourModeFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const FourModeProblem *problem;

    int inputs() const {
        return 4;
    }
    int values() const {
        return 12;
    }
    int operator()(const Eigen::VectorXd &phi, Eigen::VectorXd &fvec) const {
        fvec = problem->residuals(phi);
        return 0;
    }
    int df(const Eigen::VectorXd &phi, Eigen::MatrixXd &fjac) const {
        fjac.setZero(12, 4);
        const std::array<std::array<int, 2>, 4> pairs{{{0, 3}, {1, 2}, {0, 2}, {1, 3}}};
        for (int m = 0; m < 4; ++m) {
            const Vec3 &axis = problem->pump_axis[problem->pump_of[m]];
            const Vec3 horizontal(axis.z(), 0.0, -axis.x());
            const Vec3 vertical(0.0, 1.0, 0.0);
            const Vec3 dk = problem->k_mode[m] * std::sin(problem->theta[m]) *
                            (-std::sin(phi(m)) * horizontal + std::cos(phi(m)) * vertical) / problem->k_ref;
            for (int p = 0; p < 4; ++p) {
                if (pairs[p][0] == m || pairs[p][1] == m) {
                    fjac.block<3, 1>(3 * p, m) = -dk;
                }
            }
        }
        return 0;
    }
};

}  // namespace detail

/// Places one mode above and one below each pump on its matching cone and
/// adjusts the four azimuths by Levenberg-Marquardt so the two single-pump
/// pairs (1,4), (2,3) and the two dual-pump pairs (1,3), (2,4) are matched in
/// the least-squares sense. Seeded directly above and below each pump.
inline ModeGeometry solve_four_mode_geometry(const PumpConfig &pump, const DispersionParams &disp,
                                             const GeometrySolverOptions &options = {}) {
    const ConeAngles cone = cone_angles(disp, pump);
    const Wavenumbers kn = wavenumbers(disp, pump);
    const double w = pump.pump_frequency();

    detail::FourModeProblem problem;
    problem.pump_axis = {pump_direction(pump, Pump::A), pump_direction(pump, Pump::B)};
    problem.pump_k = {Wavevector{kn.pump * problem.pump_axis[0]}, Wavevector{kn.pump * problem.pump_axis[1]}};
    problem.theta = {cone.probe, cone.probe, cone.conj, cone.conj};
    problem.k_mode = {kn.probe, kn.probe, kn.conj, kn.conj};
    problem.k_ref = kn.pump;

    const double up = std::numbers::pi / 2;
    Eigen::VectorXd phi(4);
    phi << up, up, -up, -up;

    detail::FourModeFunctor functor{&problem};
    Eigen::LevenbergMarquardt<detail::FourModeFunctor> lm(functor);
    lm.parameters.maxfev = options.max_evaluations;
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    Eigen::VectorXd best = phi;
    double best_norm = problem.residuals(phi).norm();
    if (best_norm > 0.0) {
        lm.minimize(phi);
        const double norm = problem.residuals(phi).norm();
        if (norm < best_norm) {
            best = phi;
            best_norm = norm;
        }
    }

    ModeGeometry g;
    g.cone = cone;
    g.degenerate = pump.half_cross_angle <= 1e-12;
    g.pump_wavevectors = problem.pump_k;
    g.wavevectors = problem.wavevectors(best);
    const Eigen::VectorXd r = problem.residuals(best) * kn.pump;
    double total = 0.0;
    for (int p = 0; p < 4; ++p) {
        g.pair_residuals[p] = r.segment<3>(3 * p).norm();
        total += g.pair_residuals[p] * g.pair_residuals[p];
    }
    g.total_residual = std::sqrt(total);
    for (int m = 0; m < 4; ++m) {
        g.azimuths[m] = std::remainder(best(m), 2.0 * std::numbers::pi);
        g.directions[m] = g.wavevectors[m].k.normalized();
        g.frequencies[m] = m < 2 ? w - disp.freq_offset : w + disp.freq_offset;
    }
    if (!(g.total_residual <= options.residual_ceiling * kn.pump)) {
        throw NoSolution("four-mode mismatch " + std::to_string(g.total_residual) + " rad/m exceeds ceiling " +
                         std::to_string(options.residual_ceiling * kn.pump) + " rad/m");
    }
    return g;
}

/// Directions on both cones: the unit vector at angle theta from each pump
/// axis, above (sign +1) or below (sign -1) the crossing plane.
inline Vec3 cone_intersection(const PumpConfig &pump, double theta, double sign) {
    const double z = std::cos(theta) / std::cos(pump.half_cross_angle);
    if (z > 1.0) {
        throw NoSolution("cones of half-angle " + std::to_string(theta) + " rad do not intersect at crossing half-angle " +
                         std::to_string(pump.half_cross_angle) + " rad");
    }
    return {0.0, sign * std::sqrt(std::max(0.0, 1.0 - z * z)), z};
}

/// The four-mode configuration and the six-mode alternative, sorted best
/// first by dominant growth rate (ties keep FourMode first).
///
/// The six-mode layout is a probe/conjugate pair at the two cone
/// intersections, coupled by the dual-pump process, plus one horizontal
/// single-pump pair on each cone (outer probe, inner conjugate). The three
/// pairs share no mode.
inline std::vector<CandidateConfig> enumerate_candidate_configs(const PumpConfig &pump, const DispersionParams &disp,
                                                                double g_single, double g_dual) {
    const ModeGeometry geom = solve_four_mode_geometry(pump, disp);
    std::vector<CandidateConfig> out;

    CandidateConfig four;
    four.kind = ConfigKind::FourMode;
    four.directions.assign(geom.directions.begin(), geom.directions.end());
    four.graph = coupling_graph_from_powers(pump.power_a, pump.power_b, g_single, g_dual);
    four.gain_score = dominant_gain(four.graph);
    out.push_back(std::move(four));

    const Vec3 axis_a = pump_direction(pump, Pump::A);
    const Vec3 axis_b = pump_direction(pump, Pump::B);
    const double pi = std::numbers::pi;
    CandidateConfig six;
    six.kind = ConfigKind::SixMode;
    six.directions = {
        cone_direction(axis_a, geom.cone.probe, pi), cone_direction(axis_a, geom.cone.conj, 0.0),
        cone_direction(axis_b, geom.cone.probe, 0.0), cone_direction(axis_b, geom.cone.conj, pi),
        cone_intersection(pump, geom.cone.probe, 1.0), cone_intersection(pump, geom.cone.conj, -1.0),
    };
    const double eps_dual = g_dual * std::sqrt(pump.power_a * pump.power_b);
    six.graph = CouplingGraph(6, {{0, 1, g_single * pump.power_a}, {2, 3, g_single * pump.power_b}, {4, 5, eps_dual}});
    six.gain_score = dominant_gain(six.graph);
    out.push_back(std::move(six));

    std::vector<double> scores;
    for (const auto &c : out) {
        scores.push_back(c.gain_score);
    }
    const auto keys = rate_ranking_keys(scores);
    if (keys[1] > keys[0]) {
        std::swap(out[0], out[1]);
    }
    return out;
}

}  // namespace fwm
