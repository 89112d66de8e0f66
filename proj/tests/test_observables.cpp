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

#include "test_support.hpp"

namespace {

using namespace vqcs;
using vqcs::testing::random_schedule;
using vqcs::testing::random_sequence;

struct Case {
    int L;
    int p;
    InitialState init;
};

class DenseAgreement : public ::testing::TestWithParam<Case> {};

TEST_P(DenseAgreement, EnergyAndOverlap) {
    const auto c = GetParam();
    std::mt19937_64 rng(100 + c.L * 10 + c.p);
    for (int trial = 0; trial < 5; ++trial) {
        const auto seq = GateSequence::from_schedule(random_schedule(rng, c.p));
        const double h = 0.3 + 0.4 * trial;
        const auto st = oracle::simulate(c.L, seq, c.init);
        const auto gs = oracle::ground_state(c.L, h);
        EXPECT_NEAR(energy_density(seq, h, c.L, c.init), oracle::energy(st, h) / c.L, 1e-12);
        EXPECT_NEAR(std::abs(overlap(seq, h, c.L, c.init)), std::abs(oracle::inner(gs.even.state, st)), 1e-12);
        EXPECT_NEAR(overlap_modulus(seq, h, c.L, c.init), std::abs(oracle::inner(gs.even.state, st)), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Chains, DenseAgreement,
                         ::testing::Values(Case{4, 1, InitialState::AllZero}, Case{6, 2, InitialState::AllZero},
                                           Case{8, 3, InitialState::AllZero}, Case{4, 1, InitialState::AllPlus},
                                           Case{6, 2, InitialState::AllPlus}, Case{8, 3, InitialState::AllPlus},
                                           Case{10, 2, InitialState::AllZero}));

TEST(Overlap, SymmetryBrokenMatchesDense) {
    std::mt19937_64 rng(8);
    for (int L : {6, 8}) {
        const auto seq = GateSequence::from_schedule(random_schedule(rng, 2));
        const double h = 0.5;
        const auto st = oracle::simulate(L, seq, InitialState::AllZero);
        const auto sb = oracle::symmetry_broken_ground_state(oracle::ground_state(L, h));
        EXPECT_NEAR(std::abs(overlap(seq, h, L, InitialState::AllZero, true)), std::abs(oracle::inner(sb, st)), 1e-10);
    }
}

TEST(Overlap, ModulusHandlesNonAlternatingSequences) {
    std::mt19937_64 rng(9);
    const auto seq = random_sequence(rng, 5);
    const auto st = oracle::simulate(8, seq, InitialState::AllPlus);
    const auto gs = oracle::ground_state(8, 1.0);
    EXPECT_NEAR(overlap_modulus(seq, 1.0, 8, InitialState::AllPlus), std::abs(oracle::inner(gs.even.state, st)),
                1e-12);
    EXPECT_THROW(overlap(seq, 1.0, 8, InitialState::AllPlus), PreconditionError);
}

TEST(Energy, NonAlternatingSequencesMatchDense) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 3; ++trial) {
        const auto seq = random_sequence(rng, 6, trial == 2);
        const auto st = oracle::simulate(10, seq, InitialState::AllZero);
        EXPECT_NEAR(energy_density(seq, 0.9, 10, InitialState::AllZero), oracle::energy(st, 0.9) / 10, 1e-12);
    }
}

TEST(Energy, EmptyCircuitValues) {
    // <0..0|H|0..0> / L = -1 and <+..+|H|+..+> / L = -h
    EXPECT_NEAR(energy_density(GateSequence{}, 0.7, 8, InitialState::AllZero), -1.0, 1e-14);
    EXPECT_NEAR(energy_density(GateSequence{}, 0.7, 8, InitialState::AllPlus), -0.7, 1e-14);
}

TEST(Energy, LightConeMakesChainLengthIrrelevant) {
    std::mt19937_64 rng(11);
    for (int p = 1; p <= 4; ++p) {
        const auto seq = GateSequence::from_schedule(random_schedule(rng, p));
        EXPECT_NEAR(energy_density(seq, 1.0, 4 * p, InitialState::AllZero),
                    energy_density(seq, 1.0, 8 * p + 6, InitialState::AllZero), 1e-12);
    }
}

TEST(Energy, AdjointGradientMatchesFiniteDifference) {
    std::mt19937_64 rng(12);
    const auto s = random_schedule(rng, 3);
    const auto seq = GateSequence::from_schedule(s);
    const auto g = energy_gradient(seq, 0.8, 12, InitialState::AllZero);
    auto x = s.flat();
    for (std::size_t j = 0; j < x.size(); ++j) {
        auto xp = x;
        auto xm = x;
        xp[j] += 1e-5;
        xm[j] -= 1e-5;
        const double fd = (energy_density(AngleSchedule::from_flat(xp), 0.8, 12, InitialState::AllZero) -
                           energy_density(AngleSchedule::from_flat(xm), 0.8, 12, InitialState::AllZero)) /
                          2e-5;
        EXPECT_NEAR(g[j], fd, 1e-8);
    }
}

TEST(Magnetization, XAndXXMatchDenseChain) {
    std::mt19937_64 rng(13);
    for (int p = 1; p <= 3; ++p) {
        const auto seq = GateSequence::from_schedule(random_schedule(rng, p));
        const auto st = oracle::simulate(14, seq, InitialState::AllZero);
        const auto prof = x_profile(circuit_source(seq, InitialState::AllZero), 256);
        EXPECT_NEAR(magnetization_x(prof), oracle::expectation(st, oracle::Observable::X), 1e-12);
        for (int l = 1; l <= 3; ++l) {
            EXPECT_NEAR(correlation_xx(prof, l), oracle::expectation(st, oracle::Observable::XX, 0.0, l), 1e-12);
        }
    }
}

TEST(Magnetization, EmptyCircuitOnAllPlusIsFullyPolarized) {
    const auto src = circuit_source(GateSequence{}, InitialState::AllPlus);
    EXPECT_NEAR(magnetization_x(src).value, 1.0, 1e-14);
    EXPECT_NEAR(correlation_xx(src, 3), 0.0, 1e-14);
}

TEST(Magnetization, ConvergenceFlagSetForSmoothProfiles) {
    std::mt19937_64 rng(14);
    const auto seq = GateSequence::from_schedule(random_schedule(rng, 4));
    EXPECT_TRUE(magnetization_x(circuit_source(seq, InitialState::AllZero)).converged);
}

TEST(Preconditions, RejectsOddChains) {
    EXPECT_THROW(energy_density(GateSequence{}, 1.0, 7, InitialState::AllZero), PreconditionError);
    EXPECT_THROW(energy_density(GateSequence{}, -1.0, 8, InitialState::AllZero), PreconditionError);
}

} // namespace
