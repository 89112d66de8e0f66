// Copyright 2026 The vqcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_support.hpp"

namespace {

using namespace vqcs;
using vqcs::testing::random_schedule;

// p = 1 optimum by brute force over the dense simulator on a 200 x 200 grid
TEST(Minimize, DepthOneMatchesDenseGridSearch) {
    const double h = 0.8;
    const int L = 8;
    double best = 1e9;
    const auto zz = oracle::zz_diagonal(L);
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 200; ++j) {
            auto st = oracle::initial_state(L, InitialState::AllZero);
            oracle::apply_x(st, half_pi * i / 200.0);
            oracle::apply_zz(st, half_pi * j / 200.0, zz);
            best = std::min(best, oracle::energy(st, h) / L);
        }
    }
    const auto r = minimize(h, 1, InitialState::AllZero, 5, 8);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.F, best + 1e-12);
    EXPECT_GT(r.F, best - 1e-3);
    EXPECT_GT(r.F, ground_energy_density_inf(h));
}

TEST(Minimize, DeterministicUnderSeed) {
    const auto a = minimize(1.0, 3, InitialState::AllZero, 42, 4);
    const auto b = minimize(1.0, 3, InitialState::AllZero, 42, 4);
    EXPECT_EQ(a.schedule.flat(), b.schedule.flat());
    EXPECT_EQ(a.branch_key, b.branch_key);
}

TEST(Minimize, AnglesAreWrapped) {
    const auto r = minimize(0.6, 2, InitialState::AllZero, 3, 4);
    for (double x : r.schedule.flat()) {
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, half_pi);
    }
}

TEST(Minimize, PlusStateOptimumIsVariational) {
    const auto r = minimize(1.2, 3, InitialState::AllPlus, 9, 4);
    EXPECT_TRUE(r.converged);
    EXPECT_GT(r.F, ground_energy_density_inf(1.2));
    EXPECT_LT(r.F, -1.2); // beats the initial state
}

TEST(Ladder, ResidualDecreasesWithDepth) {
    const auto ladder = minimize_depth_ladder(1.0, 6, InitialState::AllZero, 1, 4);
    ASSERT_EQ(ladder.size(), 6U);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        EXPECT_LT(ladder[i].F, ladder[i - 1].F);
        EXPECT_EQ(ladder[i].schedule.depth(), static_cast<int>(i) + 1);
    }
}

TEST(Ladder, ExtensionsPreserveTheState) {
    std::mt19937_64 rng(6);
    const auto s = random_schedule(rng, 3);
    const auto ext = depth_extensions(s);
    ASSERT_EQ(ext.size(), 3U);
    // zero padding at the tail leaves the energy unchanged
    EXPECT_NEAR(energy_density(ext[1], 0.9, 16, InitialState::AllZero),
                energy_density(s, 0.9, 16, InitialState::AllZero), 1e-13);
    EXPECT_EQ(ext[0].depth(), 4);
}

TEST(Angles, WrapIntoPrincipalInterval) {
    EXPECT_NEAR(wrap_angle(half_pi + 0.1), 0.1, 1e-15);
    EXPECT_NEAR(wrap_angle(-0.1), half_pi - 0.1, 1e-15);
    EXPECT_EQ(wrap_angle(0.0), 0.0);
}

TEST(Angles, DualScheduleHasSameEnergy) {
    std::mt19937_64 rng(7);
    const auto s = random_schedule(rng, 4);
    EXPECT_NEAR(energy_density(dual(s), 1.1, 16, InitialState::AllZero),
                energy_density(s, 1.1, 16, InitialState::AllZero), 1e-12);
}

TEST(Angles, PreparationTimeCanonicalForm) {
    const AngleSchedule s({1.5, 1.5}, {1.5, 1.5});
    const auto t = total_time(s);
    EXPECT_NEAR(t.total, 6.0, 1e-15);
    EXPECT_NEAR(t.canonical, 2 * pi - 6.0, 1e-15);
}

TEST(Branches, DepthTwoHasFourDegenerateBranches) {
    const auto c = enumerate_branches(1.0, 2, 40, 11);
    ASSERT_EQ(c.branches.size(), 4U);
    std::set<std::uint64_t> keys;
    double m_x_lo = 1.0;
    double m_x_hi = -1.0;
    for (const auto &b : c.branches) {
        EXPECT_NEAR(b.F, c.F_min, 1e-9);
        keys.insert(b.key);
        const double mx =
            magnetization_x(circuit_source(GateSequence::from_schedule(b.schedule), InitialState::AllZero)).value;
        m_x_lo = std::min(m_x_lo, mx);
        m_x_hi = std::max(m_x_hi, mx);
    }
    EXPECT_EQ(keys.size(), 4U);
    EXPECT_LT(m_x_hi - m_x_lo, 1e-9);
}

TEST(Branches, KeyIsStableUnderTinyPerturbation) {
    const auto r = minimize(1.0, 2, InitialState::AllZero, 2, 4);
    auto x = r.schedule.flat();
    x[0] += 1e-12;
    EXPECT_EQ(branch_key(AngleSchedule::from_flat(x), 1.0, InitialState::AllZero), r.branch_key);
}

TEST(Preconditions, RejectsBadDepthAndField) {
    EXPECT_THROW(minimize(1.0, 0, InitialState::AllZero, 1), PreconditionError);
    EXPECT_THROW(minimize(-1.0, 1, InitialState::AllZero, 1), PreconditionError);
}

} // namespace
