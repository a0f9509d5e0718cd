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

#include "fwm/oracle.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace fwm;

TEST(FockEvolve, zero_time_is_vacuum) {
    const FockState fs = fock_evolve(symmetric_four_mode_graph(0.2, 0.1), 0.0, 6);
    const std::size_t zero[4] = {0, 0, 0, 0};
    EXPECT_EQ(fock_amplitude(fs, zero), Complex(1.0));
    EXPECT_EQ(fock_total_photons(fs), 0.0);
    EXPECT_EQ(fs.leakage, 0.0);
}

TEST(FockEvolve, two_mode_squeezed_vacuum_amplitudes) {
    const double r = 0.4;
    const FockState fs = fock_evolve(CouplingGraph(2, {{0, 1, 1.0}}), r, 30, FockLimits{2, 40, 2000});
    const double th = std::tanh(r);
    for (std::size_t n = 0; n < 5; ++n) {
        const std::size_t occ[2] = {n, n};
        EXPECT_NEAR(fock_amplitude(fs, occ).real(), std::pow(th, n) / std::cosh(r), 1e-13);
        EXPECT_NEAR(fock_amplitude(fs, occ).imag(), 0.0, 1e-15);
    }
    const std::size_t off[2] = {1, 0};
    EXPECT_EQ(fock_amplitude(fs, off), Complex{});
    EXPECT_NEAR(fock_total_photons(fs), 2.0 * std::sinh(r) * std::sinh(r), 1e-12);
}

TEST(FockEvolve, conserves_norm_and_parity) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 0.3);
    for (int trial = 0; trial < 3; ++trial) {
        const FockState fs = fock_evolve(four_mode_graph(u(rng), u(rng), u(rng), u(rng)), 1.0, 8);
        EXPECT_LT(fs.norm_defect, 1e-12);
        EXPECT_EQ(odd_parity_population(fs), 0.0);
    }
}

TEST(FockEvolve, leakage_shrinks_with_cutoff) {
    const CouplingGraph g = symmetric_four_mode_graph(0.15, 0.1);
    const double coarse = fock_evolve(g, 1.0, 6).leakage;
    const double fine = fock_evolve(g, 1.0, 10).leakage;
    EXPECT_GT(coarse, 0.0);
    EXPECT_LT(fine, coarse);
}

TEST(FockCovariance, vacuum) {
    const FockMoments m = fock_covariance(fock_evolve(CouplingGraph(3), 1.0, 3));
    EXPECT_LT(max_abs_entry(m.cov - vacuum_state(3).cov), 1e-15);
    EXPECT_TRUE(m.mean.isZero(0.0));
}

TEST(OracleCompare, single_pair) {
    const OracleComparison c = oracle_compare(CouplingGraph(2, {{0, 1, 0.3}}), 1.0, 40, FockLimits{2, 40, 2000});
    EXPECT_LT(c.deviation, 1e-10);
    EXPECT_LT(c.leakage, 1e-20);
}

TEST(OracleCompare, four_mode_graph) {
    const OracleComparison c = oracle_compare(symmetric_four_mode_graph(0.2, 0.1), 1.0, 12);
    EXPECT_LT(c.deviation, 1e-3);
    EXPECT_LT(c.leakage, 1e-4);
    EXPECT_LT(c.norm_defect, 1e-12);
}

TEST(OracleCompare, three_modes_on_a_line) {
    const OracleComparison c = oracle_compare(CouplingGraph(3, {{0, 1, 0.2}, {1, 2, 0.15}}), 1.0, 16,
                                              FockLimits{3, 16, 17 * 17 * 17});
    EXPECT_LT(c.deviation, 1e-6);
}

TEST(OracleCompare, dimension_guard) {
    EXPECT_THROW(oracle_compare(CouplingGraph(5), 0.1, 4), DimensionGuard);
    EXPECT_THROW(oracle_compare(CouplingGraph(2), 0.1, 15), DimensionGuard);
    EXPECT_THROW(oracle_compare(CouplingGraph(4), 0.1, 12, FockLimits{4, 14, 1000}), DimensionGuard);
}
