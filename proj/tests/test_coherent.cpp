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

cplx map_value(const Mobius &m, cplx f) { return m(ProjectiveAmplitude::finite(f)).value(); }

TEST(Frames, ZeroAndInfinityMapsAreInverse) {
    for (double k : {0.1, 1.0, 2.5}) {
        for (cplx f : {cplx{0.3, -0.2}, cplx{-2.0, 1.0}, cplx{0.0, 0.0}}) {
            EXPECT_LT(std::abs(map_value(infinity_to_zero_frame(k), map_value(zero_to_infinity_frame(k), f)) - f), 1e-13);
        }
    }
}

TEST(Frames, BasisChangeToSameFieldIsIdentity) {
    const cplx f{0.4, 0.9};
    EXPECT_LT(std::abs(map_value(basis_change(0.8, 0.8, 1.1), f) - f), 1e-15);
}

TEST(Frames, BasisChangeComposes) {
    const cplx f{0.4, -0.3};
    const double k = 0.9;
    const auto two = basis_change(1.4, 0.6, k) * basis_change(0.6, 0.0, k);
    EXPECT_LT(std::abs(map_value(two, f) - map_value(basis_change(1.4, 0.0, k), f)), 1e-13);
}

TEST(Gates, SameKindGatesAddAngles) {
    for (auto kind : {GateKind::X, GateKind::ZZ, GateKind::YY}) {
        const double k = 0.77;
        const auto ab = gate_map(kind, 0.3, k) * gate_map(kind, 0.45, k);
        const auto sum = gate_map(kind, 0.75, k);
        const cplx f{0.2, 0.6};
        EXPECT_LT(std::abs(map_value(ab, f) - map_value(sum, f)), 1e-13) << to_string(kind);
    }
}

TEST(Gates, HalfPiPeriodicity) {
    const cplx f{1.3, -0.4};
    for (auto kind : {GateKind::X, GateKind::ZZ}) {
        EXPECT_LT(std::abs(map_value(gate_map(kind, 0.2 + half_pi, 1.2), f) - map_value(gate_map(kind, 0.2, 1.2), f)),
                  1e-13);
    }
}

TEST(Gates, ZeroAngleIsIdentity) {
    const cplx f{0.5, 0.5};
    EXPECT_LT(std::abs(map_value(gate_map(GateKind::ZZ, 0.0, 2.0), f) - f), 1e-15);
}

TEST(Gates, DerivativeMatchesFiniteDifference) {
    const double t = 0.37;
    const double k = 1.9;
    const double d = 1e-6;
    for (auto kind : {GateKind::X, GateKind::ZZ, GateKind::YY}) {
        const auto dm = gate_map_derivative(kind, t, k);
        const auto p = gate_map(kind, t + d, k);
        const auto m = gate_map(kind, t - d, k);
        EXPECT_LT(std::abs(dm.a - (p.a - m.a) / (2 * d)), 1e-8);
        EXPECT_LT(std::abs(dm.b - (p.b - m.b) / (2 * d)), 1e-8);
        EXPECT_LT(std::abs(dm.c - (p.c - m.c) / (2 * d)), 1e-8);
        EXPECT_LT(std::abs(dm.d - (p.d - m.d) / (2 * d)), 1e-8);
    }
}

TEST(Evolve, AllZeroStartsAtZero) {
    EXPECT_EQ(evolve(GateSequence{}, InitialState::AllZero, 1.0).zero_frame.value(), cplx(0.0, 0.0));
}

TEST(Evolve, AllPlusStartsAtInverseITan) {
    const double k = 0.8;
    const auto f = initial_amplitude(InitialState::AllPlus, k).value();
    EXPECT_LT(std::abs(f - 1.0 / (I * std::tan(0.5 * k))), 1e-14);
    // the X-basis vacuum: zero in the infinity frame
    EXPECT_LT(std::abs(evolve_final_infinity(GateSequence{}, InitialState::AllPlus, k).value()), 1e-15);
}

TEST(Evolve, XLayerOnAllPlusOnlyChangesPhase) {
    const auto seq = GateSequence({{GateKind::X, 0.6}});
    const double k = 1.3;
    EXPECT_LT(std::abs(evolve_final(seq, InitialState::AllPlus, k).value() -
                       initial_amplitude(InitialState::AllPlus, k).value()),
              1e-13);
}

TEST(Evolve, YYSingleGateFlipsSignOfZZOnAllPlus) {
    for (double k : {0.4, 1.7, 2.8}) {
        // amplitudes in the h = infinity frame
        const auto zz = evolve_final_infinity(GateSequence({{GateKind::ZZ, 0.3}}), InitialState::AllPlus, k).value();
        const auto yy = evolve_final_infinity(GateSequence({{GateKind::YY, 0.3}}), InitialState::AllPlus, k).value();
        EXPECT_LT(std::abs(yy + zz), 1e-12) << k;
    }
}

TEST(Evolve, GTransformAtPiIsIdentity) {
    std::mt19937_64 rng(4);
    const auto seq = GateSequence::from_schedule(random_schedule(rng, 3));
    const auto f = evolve_final(seq, InitialState::AllZero, pi - 1e-7);
    const auto g = g_transform(evolve_final(seq, InitialState::AllZero, pi), pi);
    EXPECT_LT(std::abs(g.value() - f.value()), 1e-5);
}

TEST(Evolve, TrajectoryHasOneEntryPerGate) {
    std::mt19937_64 rng(1);
    const auto seq = random_sequence(rng, 7, true);
    EXPECT_EQ(evolve(seq, InitialState::AllPlus, 0.5).steps.size(), 8U);
}

TEST(Evolve, FinalAmplitudeAgreesBetweenRoutes) {
    std::mt19937_64 rng(2);
    const auto seq = random_sequence(rng, 9);
    for (double k : {0.3, 2.2}) {
        const auto a = evolve(seq, InitialState::AllZero, k).zero_frame.value();
        const auto b = evolve_final(seq, InitialState::AllZero, k).value();
        const auto c = evolve_with_grad(seq, InitialState::AllZero, k).trajectory.zero_frame.value();
        EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
        EXPECT_LT(std::abs(a - c), 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST(Gradient, ForwardModeMatchesFiniteDifference) {
    std::mt19937_64 rng(3);
    const auto s = random_schedule(rng, 3);
    const double k = 1.1;
    const auto tg = evolve_with_grad(GateSequence::from_schedule(s), InitialState::AllZero, k);
    const auto x = s.flat();
    for (std::size_t j = 0; j < x.size(); ++j) {
        auto xp = x;
        auto xm = x;
        xp[j] += 1e-6;
        xm[j] -= 1e-6;
        const auto fp = evolve_final(GateSequence::from_schedule(AngleSchedule::from_flat(xp)), InitialState::AllZero, k);
        const auto fm = evolve_final(GateSequence::from_schedule(AngleSchedule::from_flat(xm)), InitialState::AllZero, k);
        EXPECT_LT(std::abs(tg.df[j] - (fp.value() - fm.value()) / 2e-6), 1e-6 * std::max(1.0, std::abs(tg.df[j])));
    }
}

TEST(Gradient, LastXGateRotatesPhaseOfInfinityFrameAmplitude) {
    // derivative with respect to the last gate only moves f around a circle in the infinity frame
    const auto seq = GateSequence({{GateKind::X, 0.4}, {GateKind::ZZ, 0.7}, {GateKind::X, 0.2}});
    const double k = 0.9;
    const auto tg = evolve_with_grad(seq, InitialState::AllZero, k);
    const auto g = tg.trajectory.infinity_frame.value();
    const auto dv = zero_to_infinity_frame(k)(tg.dpair.back());
    const auto v = tg.trajectory.infinity_frame;
    const cplx dg = (dv.num * v.den - v.num * dv.den) / (v.den * v.den);
    EXPECT_LT(std::abs(dg - cplx{0.0, -4.0} * g), 1e-10);
}

TEST(Projection, ProjectedAmplitudeOfGroundStateVanishes) {
    // quench amplitude at t = 0 from h0 is the h0 vacuum, so projecting onto h0 gives 0
    for (double k : {0.5, 2.0}) {
        const auto f = quench_amplitude(0.6, 1.3, 0.0, k);
        EXPECT_LT(std::abs(project(f, 0.6, k).value()), 1e-14);
    }
}

TEST(Projection, QuenchTargetFrameHasConstantModulus) {
    const double k = 1.2;
    const double a = std::abs(quench_amplitude_target_frame(0.4, 0.8, 0.0, k).value());
    const double b = std::abs(quench_amplitude_target_frame(0.4, 0.8, 3.3, k).value());
    EXPECT_NEAR(a, b, 1e-14);
    EXPECT_NEAR(a, std::abs(bogoliubov_kernel(0.8, 0.4, k)), 1e-14);
}

TEST(Projective, WeightIsBoundedAtPoles) {
    EXPECT_DOUBLE_EQ(ProjectiveAmplitude::infinity().weight(), 1.0);
    EXPECT_DOUBLE_EQ(ProjectiveAmplitude::finite(0.0).weight(), 0.0);
    EXPECT_TRUE(ProjectiveAmplitude::infinity().is_infinite());
}

} // namespace
