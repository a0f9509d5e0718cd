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

#include "fwm/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "gtest/gtest.h"

using namespace fwm;

namespace {

PumpConfig default_pump() {
    return PumpConfig{};
}

DispersionParams offbeat_dispersion() {
    return {1.00001, 1.0002, 0.99998, kTwoPi * 5e9};
}

PumpConfig offbeat_pump() {
    PumpConfig p;
    p.wavelength_vacuum = 780e-9;
    return p;
}

/// Cone angle by scanning the longitudinal residual on a dense grid in long
/// double and interpolating linearly across the first sign change.
double grid_scan_cone_angle(const DispersionParams &d, const PumpConfig &p, long double max_angle, int points) {
    const long double c = 299792458.0L;
    const long double w = 2.0L * std::numbers::pi_v<long double> * c / p.wavelength_vacuum;
    const long double kp = d.n_pump * w / c;
    const long double kpr = d.n_probe * (w - d.freq_offset) / c;
    const long double kc = d.n_conj * (w + d.freq_offset) / c;
    auto f = [&](long double th) {
        const long double thc = std::asin(kpr / kc * std::sin(th));
        return kpr * std::cos(th) + kc * std::cos(thc) - 2.0L * kp;
    };
    long double prev_t = 0.0L;
    long double prev_f = f(0.0L);
    for (int i = 1; i <= points; ++i) {
        const long double t = max_angle * i / points;
        const long double ft = f(t);
        if ((prev_f > 0) != (ft > 0)) {
            return static_cast<double>(prev_t + (t - prev_t) * prev_f / (prev_f - ft));
        }
        prev_t = t;
        prev_f = ft;
    }
    return -1.0;
}

}  // namespace

TEST(ConeHalfAngle, calibrated_default_is_eight_mrad) {
    const double theta = cone_half_angle(calibrated_default_dispersion(), default_pump());
    EXPECT_NEAR(theta, 8.0e-3, 0.05 * 8.0e-3);
    EXPECT_NEAR(theta, 8.0e-3, 1e-6);
}

TEST(ConeHalfAngle, collinear_when_dispersionless) {
    const DispersionParams d{1.0, 1.0, 1.0, 0.0};
    EXPECT_EQ(cone_half_angle(d, default_pump()), 0.0);
}

TEST(ConeHalfAngle, matches_grid_scan_oracle) {
    const auto d = offbeat_dispersion();
    const auto p = offbeat_pump();
    const double oracle = grid_scan_cone_angle(d, p, 0.05L, 400000);
    // Frozen from a 40-digit root solve of the same two equations.
    const double frozen = 0.012647285995704040;
    EXPECT_NEAR(oracle, frozen, 1e-11);
    EXPECT_NEAR(cone_half_angle(d, p), oracle, 1e-9);
    EXPECT_NEAR(cone_half_angle(d, p), frozen, 1e-12);
    EXPECT_NEAR(cone_angles(d, p).conj, 0.012649739459933220, 1e-12);
}

TEST(ConeHalfAngle, independent_of_pump_direction) {
    const auto d = calibrated_default_dispersion();
    PumpConfig p = default_pump();
    const double ref = cone_half_angle(d, p);
    for (double deg : {0.0, 0.1, 1.0, 5.0, 30.0}) {
        p.half_cross_angle = deg * std::numbers::pi / 180.0;
        EXPECT_EQ(cone_half_angle(d, p), ref);
    }
}

TEST(ConeHalfAngle, no_solution_reports_both_residuals) {
    const DispersionParams d{1.001, 1.0, 1.0, kTwoPi * 3e9};
    try {
        cone_half_angle(d, default_pump());
        FAIL() << "expected NoSolution";
    } catch (const NoSolution &e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("residual(0)"), std::string::npos);
        EXPECT_NE(msg.find("residual(hi)"), std::string::npos);
    }
}

TEST(ConeHalfAngle, rejects_invalid_inputs) {
    PumpConfig p;
    p.wavelength_vacuum = -1.0;
    EXPECT_THROW(cone_half_angle(calibrated_default_dispersion(), p), InvalidArgument);
    DispersionParams d = calibrated_default_dispersion();
    d.n_probe = 0.5;
    EXPECT_THROW(cone_half_angle(d, default_pump()), InvalidArgument);
}

TEST(PhaseMismatch, identity_is_zero) {
    const Wavevector a{{1.0, 2.0, 3.0}};
    const Wavevector b{{-4.0, 0.5, 7.0}};
    EXPECT_EQ(phase_mismatch({a, b}, {a, b}), Vec3::Zero());
    EXPECT_THROW(phase_mismatch(std::span<const Wavevector>{}, std::span<const Wavevector>{}), InvalidArgument);
}

TEST(PhaseMismatch, opposite_points_on_cone_match_under_any_rotation) {
    const auto d = calibrated_default_dispersion();
    const auto p = default_pump();
    const ConeAngles cone = cone_angles(d, p);
    const Wavenumbers k = wavenumbers(d, p);
    const double w = p.pump_frequency();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Matrix3d rot =
            Eigen::Quaterniond(u(rng), u(rng), u(rng), u(rng)).normalized().toRotationMatrix();
        const Vec3 axis = rot * Vec3(0.0, 0.0, 1.0);
        const Vec3 side = rot * Vec3(1.0, 0.0, 0.0);
        const Vec3 up = rot * Vec3(0.0, 1.0, 0.0);
        const double phi = 3.0 * u(rng);
        const Vec3 probe_dir = std::cos(cone.probe) * axis +
                               std::sin(cone.probe) * (std::cos(phi) * side + std::sin(phi) * up);
        const Vec3 conj_dir = std::cos(cone.conj) * axis -
                              std::sin(cone.conj) * (std::cos(phi) * side + std::sin(phi) * up);
        const Wavevector pump_k{k.pump * axis};
        const Vec3 dk = phase_mismatch({pump_k, pump_k},
                                       {Wavevector::along(probe_dir, d.n_probe, w - d.freq_offset),
                                        Wavevector::along(conj_dir, d.n_conj, w + d.freq_offset)});
        EXPECT_LT(dk.norm(), 1e-9 * k.pump);
    }
}

TEST(FourModeGeometry, default_pairs_are_phase_matched) {
    const auto d = calibrated_default_dispersion();
    const auto p = default_pump();
    const ModeGeometry g = solve_four_mode_geometry(p, d);
    const double kp = wavenumbers(d, p).pump;
    const auto &k = g.wavevectors;
    const auto &a = g.pump_wavevectors[0];
    const auto &b = g.pump_wavevectors[1];
    EXPECT_LT(phase_mismatch({a, a}, {k[0], k[3]}).norm(), 1e-9 * kp);
    EXPECT_LT(phase_mismatch({b, b}, {k[1], k[2]}).norm(), 1e-9 * kp);
    EXPECT_LT(phase_mismatch({a, b}, {k[0], k[2]}).norm(), 1e-9 * kp);
    EXPECT_LT(phase_mismatch({a, b}, {k[1], k[3]}).norm(), 1e-9 * kp);
    EXPECT_LT(g.total_residual, 1e-3 * kp);
    EXPECT_FALSE(g.degenerate);

    for (int m = 0; m < 4; ++m) {
        EXPECT_NEAR(g.directions[m].norm(), 1.0, 1e-12);
        EXPECT_NEAR(g.wavevectors[m].magnitude(),
                    (m < 2 ? d.n_probe : d.n_conj) * g.frequencies[m] / kSpeedOfLight,
                    1e-9 * g.wavevectors[m].magnitude());
    }
    // Above/below each pump, offset vertically by the cone angle.
    EXPECT_NEAR(g.directions[0].y(), std::sin(g.cone.probe), 1e-6);
    EXPECT_NEAR(g.directions[1].y(), std::sin(g.cone.probe), 1e-6);
    EXPECT_NEAR(g.directions[2].y(), -std::sin(g.cone.conj), 1e-6);
    EXPECT_NEAR(g.directions[3].y(), -std::sin(g.cone.conj), 1e-6);
    EXPECT_LT(g.directions[0].x(), 0.0);
    EXPECT_GT(g.directions[1].x(), 0.0);
    // Modes 1,4 sit in the vertical plane of pump A (x/z = -tan(alpha)), 2,3 in that of B.
    const double slope = std::tan(p.half_cross_angle);
    for (int m : {0, 3}) {
        EXPECT_NEAR(g.directions[m].x() / g.directions[m].z(), -slope, 1e-6);
    }
    for (int m : {1, 2}) {
        EXPECT_NEAR(g.directions[m].x() / g.directions[m].z(), slope, 1e-6);
    }
}

TEST(FourModeGeometry, agrees_with_coarse_grid_search) {
    const auto d = calibrated_default_dispersion();
    const auto p = default_pump();
    const ModeGeometry g = solve_four_mode_geometry(p, d);
    const ConeAngles cone = cone_angles(d, p);
    const Wavenumbers kn = wavenumbers(d, p);

    // Independent construction: tilt each pump up or down by the cone angle
    // about the horizontal, then spin the result about the pump axis.
    const double a = p.half_cross_angle;
    const Vec3 pa(-std::sin(a), 0.0, std::cos(a));
    const Vec3 pb(std::sin(a), 0.0, std::cos(a));
    auto make = [&](const Vec3 &pump_axis, double tilt, double spin) {
        const Vec3 horiz = pump_axis.cross(Vec3::UnitY()).normalized();
        const Vec3 tilted = Eigen::AngleAxisd(tilt, horiz) * pump_axis;
        return Vec3(Eigen::AngleAxisd(spin, pump_axis) * tilted);
    };
    const Vec3 ka = kn.pump * pa;
    const Vec3 kb = kn.pump * pb;
    auto objective = [&](const std::array<Vec3, 4> &dir) {
        const Vec3 k1 = kn.probe * dir[0], k2 = kn.probe * dir[1], k3 = kn.conj * dir[2], k4 = kn.conj * dir[3];
        return (2 * ka - k1 - k4).squaredNorm() + (2 * kb - k2 - k3).squaredNorm() +
               (ka + kb - k1 - k3).squaredNorm() + (ka + kb - k2 - k4).squaredNorm();
    };
    const int n = 21;
    const double half_range = 2e-3;
    const double step = 2.0 * half_range / (n - 1);
    double best = INFINITY;
    std::array<Vec3, 4> best_dir;
    std::array<std::array<Vec3, 21>, 4> table;
    for (int i = 0; i < n; ++i) {
        const double s = -half_range + step * i;
        table[0][i] = make(pa, cone.probe, s);
        table[1][i] = make(pb, cone.probe, s);
        table[2][i] = make(pb, -cone.conj, s);
        table[3][i] = make(pa, -cone.conj, s);
    }
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    const std::array<Vec3, 4> dir{table[0][i0], table[1][i1], table[2][i2], table[3][i3]};
                    const double v = objective(dir);
                    if (v < best) {
                        best = v;
                        best_dir = dir;
                    }
                }
    // Mode 1 should be above pump A in this construction too.
    ASSERT_GT(best_dir[0].y(), 0.0);
    EXPECT_LE(objective(g.directions), best * (1.0 + 1e-9));
    for (int m = 0; m < 4; ++m) {
        EXPECT_LT((g.directions[m] - best_dir[m]).norm(), step * cone.probe) << "mode " << m + 1;
    }
}

TEST(FourModeGeometry, mirror_symmetric_under_pump_swap) {
    PumpConfig p = default_pump();
    p.power_a = 0.3;
    p.power_b = 0.05;
    const ModeGeometry g = solve_four_mode_geometry(p, calibrated_default_dispersion());
    std::swap(p.power_a, p.power_b);
    const ModeGeometry h = solve_four_mode_geometry(p, calibrated_default_dispersion());
    EXPECT_LT((mirror_x(g.directions[0]) - h.directions[1]).norm(), 1e-9);
    EXPECT_LT((mirror_x(g.directions[1]) - h.directions[0]).norm(), 1e-9);
    EXPECT_LT((mirror_x(g.directions[3]) - h.directions[2]).norm(), 1e-9);
    EXPECT_LT((mirror_x(g.directions[2]) - h.directions[3]).norm(), 1e-9);
}

TEST(FourModeGeometry, collinear_pumps_are_flagged_degenerate) {
    PumpConfig p = default_pump();
    p.half_cross_angle = 0.0;
    const ModeGeometry g = solve_four_mode_geometry(p, calibrated_default_dispersion());
    EXPECT_TRUE(g.degenerate);
    EXPECT_LT((g.directions[0] - g.directions[1]).norm(), 1e-9);
    EXPECT_LT((g.directions[2] - g.directions[3]).norm(), 1e-9);
}

TEST(FourModeGeometry, residual_ceiling_is_enforced) {
    GeometrySolverOptions opts;
    opts.residual_ceiling = -1.0;
    EXPECT_THROW(solve_four_mode_geometry(default_pump(), calibrated_default_dispersion(), opts), NoSolution);
}

TEST(CandidateConfigs, equal_gains_favor_four_mode_by_factor_two) {
    const auto cands = enumerate_candidate_configs(default_pump(), calibrated_default_dispersion(), 1.0, 1.0);
    ASSERT_EQ(cands.size(), 2u);
    const double eps = 0.1;
    EXPECT_EQ(cands[0].kind, ConfigKind::FourMode);
    EXPECT_NEAR(cands[0].gain_score, 2 * eps, 1e-12);
    EXPECT_NEAR(cands[1].gain_score, eps, 1e-12);
    EXPECT_EQ(cands[0].directions.size(), 4u);
    EXPECT_EQ(cands[1].directions.size(), 6u);
}

TEST(CandidateConfigs, tie_without_dual_process_keeps_four_mode_first) {
    const auto cands = enumerate_candidate_configs(default_pump(), calibrated_default_dispersion(), 1.0, 0.0);
    EXPECT_EQ(cands[0].kind, ConfigKind::FourMode);
    EXPECT_NEAR(cands[0].gain_score, cands[1].gain_score, 1e-12);
}

TEST(CandidateConfigs, unequal_single_and_dual_gains) {
    const auto cands = enumerate_candidate_configs(default_pump(), calibrated_default_dispersion(), 1.0, 0.8);
    EXPECT_EQ(cands[0].kind, ConfigKind::FourMode);
    EXPECT_NEAR(cands[0].gain_score, 0.18, 1e-12);
    EXPECT_NEAR(cands[1].gain_score, 0.10, 1e-12);
}

TEST(CandidateConfigs, six_mode_intersection_lies_on_both_cones) {
    const auto p = default_pump();
    const auto cands = enumerate_candidate_configs(p, calibrated_default_dispersion(), 1.0, 1.0);
    const auto &six = cands[1];
    const ConeAngles cone = cone_angles(calibrated_default_dispersion(), p);
    const Vec3 a = pump_direction(p, Pump::A);
    const Vec3 b = pump_direction(p, Pump::B);
    EXPECT_NEAR(std::acos(six.directions[4].dot(a)), cone.probe, 1e-9);
    EXPECT_NEAR(std::acos(six.directions[4].dot(b)), cone.probe, 1e-9);
    EXPECT_NEAR(std::acos(six.directions[5].dot(a)), cone.conj, 1e-9);
    EXPECT_GT(six.directions[4].y(), 0.0);
    EXPECT_LT(six.directions[5].y(), 0.0);
    const auto deg = six.graph.degrees();
    EXPECT_EQ(deg[4], 1u);
    EXPECT_EQ(deg[5], 1u);
}

TEST(CandidateConfigs, six_mode_needs_intersecting_cones) {
    PumpConfig p = default_pump();
    p.half_cross_angle = 0.02;  // wider than the cone
    EXPECT_THROW(enumerate_candidate_configs(p, calibrated_default_dispersion(), 1.0, 1.0), NoSolution);
}

TEST(CandidateConfigs, four_mode_wins_for_random_balanced_gains) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1e-3, 5.0);
    PumpConfig p = default_pump();
    for (int trial = 0; trial < 100; ++trial) {
        p.power_a = p.power_b = u(rng) / 10.0;
        const auto cands = enumerate_candidate_configs(p, calibrated_default_dispersion(), u(rng), u(rng));
        ASSERT_EQ(cands[0].kind, ConfigKind::FourMode);
        EXPECT_GT(cands[0].gain_score, cands[1].gain_score);
    }
}

TEST(CandidateConfigs, swapping_powers_keeps_sorted_scores) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    PumpConfig p = default_pump();
    for (int trial = 0; trial < 20; ++trial) {
        p.power_a = u(rng);
        p.power_b = u(rng);
        const auto before = enumerate_candidate_configs(p, calibrated_default_dispersion(), 1.0, 0.7);
        std::swap(p.power_a, p.power_b);
        const auto after = enumerate_candidate_configs(p, calibrated_default_dispersion(), 1.0, 0.7);
        for (std::size_t k = 0; k < before.size(); ++k) {
            EXPECT_NEAR(before[k].gain_score, after[k].gain_score, 1e-12);
            EXPECT_EQ(before[k].kind, after[k].kind);
        }
    }
}
