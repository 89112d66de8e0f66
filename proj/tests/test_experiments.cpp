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

TEST(EnergyScaling, ExponentialIdentity) {
    std::vector<int> p;
    std::vector<double> r;
    for (int q = 4; q <= 14; ++q) {
        p.push_back(q);
        r.push_back(0.37 * std::exp(-0.61 * q));
    }
    const auto f = fit_energy_scaling(p, r, Regime::Sub);
    EXPECT_NEAR(f.A, 0.37, 1e-10);
    EXPECT_NEAR(f.lambda, 0.61, 1e-10);
    EXPECT_FALSE(f.regime_mismatch);
}

TEST(EnergyScaling, PowerLawIdentity) {
    std::vector<int> p;
    std::vector<double> r;
    for (int q = 8; q <= 48; q += 8) {
        p.push_back(q);
        r.push_back(0.2 / q);
    }
    const auto f = fit_energy_scaling(p, r, Regime::Super);
    EXPECT_NEAR(f.slope, -1.0, 1e-12);
    EXPECT_NEAR(f.B, 0.2, 1e-12);
}

TEST(EnergyScaling, CriticalLeadingCoefficientWithCorrections) {
    std::vector<int> p;
    std::vector<double> r;
    for (int q = 16; q <= 64; q += 8) {
        p.push_back(q);
        r.push_back(pi / 12.0 / (q * q) * (1.0 - 2.0 / q + 0.5 / (q * q)));
    }
    const auto f = fit_energy_scaling(p, r, Regime::Critical);
    EXPECT_NEAR(f.c, pi / 12.0, 1e-10);
    EXPECT_LT(f.c_single, pi / 12.0); // the one-term fit absorbs the correction
}

TEST(EnergyScaling, MismatchFlaggedForWrongRegime) {
    std::vector<int> p;
    std::vector<double> r;
    for (int q = 2; q <= 40; q += 6) {
        p.push_back(q);
        r.push_back(1.0 / q);
    }
    EXPECT_TRUE(fit_energy_scaling(p, r, Regime::Sub).regime_mismatch);
}

TEST(EnergyScaling, Preconditions) {
    EXPECT_THROW(fit_energy_scaling({1, 2, 3}, {1, 1, 1}, Regime::Sub), PreconditionError);
    EXPECT_THROW(fit_energy_scaling({1, 2, 3, 4, 5, 6}, {1, 1, 1, 1, -1, 1}, Regime::Sub), PreconditionError);
}

CollapseData synthetic_collapse(double beta, double nu, int points = 30) {
    CollapseData d;
    for (int p : {20, 40, 60, 80}) {
        for (int i = 0; i < points; ++i) {
            const double h = 0.95 + 0.05 * i / (points - 1);
            const double x = (h - 1.0) * std::pow(p, 1.0 / nu);
            const double phi = 1.0 + std::tanh(-x);
            d[p].push_back({h, std::pow(p, -beta / nu) * phi});
        }
    }
    return d;
}

TEST(Collapse, SyntheticRoundTrip) {
    const auto fit = collapse_fit(synthetic_collapse(0.125, 1.0), 1.0, CollapseSide::Below);
    EXPECT_NEAR(fit.beta, 0.125, 0.005);
    EXPECT_NEAR(fit.nu, 1.0, 0.05);
    EXPECT_GE(fit.objective, 0.0);
    EXPECT_EQ(fit.p_list.size(), 4U);
}

TEST(Collapse, DegenerateWindowRejected) {
    CollapseData d;
    for (int p : {10, 20, 30}) {
        d[p].push_back({0.97, 0.5});
        d[p].push_back({0.98, 0.4});
    }
    EXPECT_THROW(collapse_fit(d, 1.0, CollapseSide::Below), PreconditionError);
}

TEST(Collapse, FreeCriticalFieldRecovered) {
    CollapseData d;
    for (int p : {20, 40, 60, 80}) {
        for (int i = 0; i < 30; ++i) {
            const double h = 0.95 + 0.1 * i / 29.0;
            d[p].push_back({h, std::pow(p, -0.125) * (1.0 + std::tanh(-(h - 1.01) * p))});
        }
    }
    const auto fit = collapse_fit_free_hc(d, 1.0, CollapseSide::Both);
    EXPECT_NEAR(fit.h_c, 1.01, 2e-3);
}

TEST(ExactPreparation, SmallChainsReachUnitOverlap) {
    for (int L : {2, 4}) {
        const auto r = solve_exact_preparation(L, 1.0, 1);
        ASSERT_TRUE(r.success) << L;
        EXPECT_LT(r.max_residual, 1e-10);
        EXPECT_NEAR(r.overlap_product, 1.0, 1e-8);
        EXPECT_NEAR(r.overlap_oracle, 1.0, 1e-8);
        EXPECT_EQ(r.schedule.depth(), L / 2);
    }
}

TEST(ExactPreparation, TrivialScheduleResidualIsTheBasisChangeOfTheInitialState) {
    const int L = 6;
    const auto seq = ground_first_sequence(AngleSchedule({0, 0, 0}, {0, 0, 0}));
    for (int n = 0; n < L / 2; ++n) {
        const double k = 2 * pi * (n + 0.5) / L;
        const auto f = project(evolve_final(seq, InitialState::AllPlus, k), 1.0, k).value();
        const auto expect = basis_change(1.0, 0.0, k)(initial_amplitude(InitialState::AllPlus, k)).value();
        EXPECT_LT(std::abs(f - expect), 1e-13);
        EXPECT_GT(std::abs(f), 1e-3);
    }
}

TEST(ExactPreparation, CanonicalEmbeddingIsTheSameCircuit) {
    std::mt19937_64 rng(41);
    const auto s = vqcs::testing::random_schedule(rng, 3);
    const auto a = oracle::simulate(8, ground_first_sequence(s), InitialState::AllPlus);
    const auto b = oracle::simulate(8, GateSequence::from_schedule(canonical_embedding(s)), InitialState::AllPlus);
    EXPECT_NEAR(std::abs(oracle::inner(a, b)), 1.0, 1e-13);
}

TEST(Quench, ShortTimesMatchDenseChain) {
    const std::vector<double> times{0.0, 0.25, 0.5, 0.75};
    const auto tl = quench_magnetization(0.4, 0.8, times);
    const auto dense = quench_magnetization_oracle(0.4, 0.8, times, 12);
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_TRUE(tl[i].m_Z.converged);
        EXPECT_NEAR(tl[i].m_Z.value, dense[i], 5e-3) << times[i];
    }
}

TEST(Sweep, SinglePointReducesToLadderAndObservables) {
    SweepOptions o;
    o.restarts = 2;
    o.susceptibility = false;
    const auto t = sweep({0.9}, {3}, InitialState::AllZero, 5, o);
    ASSERT_EQ(t.rows.size(), 1U);
    const auto &r = t.rows[0];
    EXPECT_EQ(r.status, "ok");
    EXPECT_NEAR(r.F, energy_density(r.schedule, 0.9, 12, InitialState::AllZero), 1e-14);
    EXPECT_NEAR(r.m_Z,
                circuit_magnetization_z(GateSequence::from_schedule(r.schedule), InitialState::AllZero).value, 1e-14);
    EXPECT_GE(r.residual, -1e-12);
}

TEST(Sweep, OrderParameterFallsWithField) {
    SweepOptions o;
    o.restarts = 2;
    o.susceptibility = false;
    std::vector<double> hs;
    for (int i = 0; i <= 10; ++i) {
        hs.push_back(0.5 + 0.1 * i);
    }
    const auto t = sweep(hs, {6}, InitialState::AllZero, 2, o);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        EXPECT_LE(std::abs(t.rows[i].m_Z), std::abs(t.rows[i - 1].m_Z) + 1e-6) << t.rows[i].h;
    }
}

TEST(Sweep, RowsSortedByDepthThenField) {
    SweepOptions o;
    o.restarts = 1;
    o.susceptibility = false;
    o.magnetization_z = false;
    const auto t = sweep({1.0, 0.8}, {3, 2}, InitialState::AllZero, 1, o);
    ASSERT_EQ(t.rows.size(), 4U);
    EXPECT_EQ(t.rows[0].p, 2);
    EXPECT_DOUBLE_EQ(t.rows[0].h, 0.8);
    EXPECT_EQ(t.rows[3].p, 3);
    EXPECT_DOUBLE_EQ(t.rows[3].h, 1.0);
}

TEST(Susceptibility, MatchesFiniteDifferenceOfTransverseMagnetization) {
    const auto r = susceptibility_x(0.7, 3, InitialState::AllZero, 3);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.chi, (r.m_plus - r.m_minus) / 2e-3, 1e-12);
    EXPECT_GT(r.chi, 0.0);
}

TEST(CorrelationLength, GrowsLinearlyWithDepth) {
    const auto ladder = minimize_depth_ladder(1.0, 24, InitialState::AllZero, 7, 4);
    const auto a = correlation_length(ladder[11].schedule);
    const auto b = correlation_length(ladder[23].schedule);
    ASSERT_TRUE(a.found);
    ASSERT_TRUE(b.found);
    EXPECT_NEAR(b.xi / a.xi, 2.0, 0.3);
}

} // namespace
