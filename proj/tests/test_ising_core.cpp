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

#include <cmath>

#include "vqcs/ising.hpp"
#include "vqcs/oracle.hpp"

namespace {

using namespace vqcs;

TEST(Momenta, SectorGrids) {
    const auto ns = momentum_grid(Sector::NS, 8);
    const auto r = momentum_grid(Sector::R, 8);
    ASSERT_EQ(ns.momenta.size(), 8U);
    EXPECT_NEAR(ns.momenta.front(), -7.0 * pi / 8.0, 1e-15);
    EXPECT_NEAR(ns.momenta.back(), 7.0 * pi / 8.0, 1e-15);
    EXPECT_NEAR(r.momenta.front(), -pi, 1e-15);
    EXPECT_EQ(r.positive().size(), 3U);
    EXPECT_EQ(ns.positive().size(), 4U);
    EXPECT_THROW(momentum_grid(Sector::NS, 7), PreconditionError);
}

TEST(Momenta, ContinuumWeightsSumToPi) {
    for (int n : {2, 17, 256}) {
        const auto g = continuum_grid(n);
        double s = 0.0;
        for (double w : g.weights) {
            s += w;
        }
        EXPECT_NEAR(s, pi, 1e-13);
    }
}

TEST(Quadrature, IntegratesPolynomialsExactly) {
    const auto rule = gauss_legendre(10, -1.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * std::pow(rule.nodes[i], 19);
    }
    EXPECT_NEAR(s, (std::pow(2.0, 20) - 1.0) / 20.0, 1e-9);
}

TEST(Dispersion, ClosedFormValues) {
    EXPECT_NEAR(dispersion(1.0, pi), 4.0, 1e-15);
    EXPECT_NEAR(dispersion(0.0, 1.234), 2.0, 1e-15);
    EXPECT_NEAR(dispersion(0.3, 0.0), -1.4, 1e-15);
    EXPECT_NEAR(dispersion(2.0, pi / 2), 2.0 * std::sqrt(5.0), 1e-14);
}

TEST(Dispersion, GroundEnergyDensityKnownPoints) {
    EXPECT_NEAR(ground_energy_density_inf(0.0), -1.0, 1e-14);
    EXPECT_NEAR(ground_energy_density_inf(1.0), -4.0 / pi, 1e-5); // cusp at k = 0 limits GL
    // h -> infinity: -h - 1 / (4 h) + O(h^-3)
    EXPECT_NEAR(ground_energy_density_inf(100.0), -100.0 - 1.0 / 400.0, 1e-6);
}

TEST(Dispersion, TransverseMagnetizationIsMinusEnergySlope) {
    for (double h : {0.3, 0.8, 1.2, 2.0}) {
        const double d = 1e-5;
        const double slope = (ground_energy_density_inf(h + d) - ground_energy_density_inf(h - d)) / (2 * d);
        EXPECT_NEAR(exact_mx_reference(h), -slope, 1e-8) << h;
    }
    EXPECT_NEAR(exact_mx_reference(1.0), 2.0 / pi, 1e-5);
}

TEST(Bogoliubov, KernelVanishesOnSameField) {
    for (double k : {0.1, 1.0, 3.0}) {
        EXPECT_NEAR(bogoliubov_kernel(0.7, 0.7, k), 0.0, 1e-15);
    }
}

TEST(Bogoliubov, HalfAnglesCompose) {
    for (double k : {0.2, 1.4, 2.9}) {
        const double a = bogoliubov_half_angle(1.3, 0.4, k);
        const double b = bogoliubov_half_angle(1.3, 2.2, k) + bogoliubov_half_angle(2.2, 0.4, k);
        EXPECT_NEAR(a, b, 1e-14);
    }
}

TEST(Bogoliubov, InfiniteFieldIsTheXBasis) {
    EXPECT_EQ(bogoliubov_angle(std::numeric_limits<double>::infinity(), 1.0), 0.0);
    EXPECT_NEAR(bogoliubov_angle(1e12, 1.0), 0.0, 1e-11);
}

TEST(Field, RejectsNegativeAndNan) {
    EXPECT_THROW(Field{-0.1}, PreconditionError);
    EXPECT_THROW(Field{std::nan("")}, PreconditionError);
    EXPECT_NO_THROW(Field{0.0});
}

// finite-chain ground energy: free-fermion NS sum against the dense spectrum
TEST(GroundEnergy, NeveuSchwarzSumMatchesDenseSpectrum) {
    for (int L : {4, 6, 8, 10}) {
        for (double h : {0.4, 1.0, 1.7}) {
            double e = 0.0;
            for (double k : momentum_grid(Sector::NS, L).momenta) {
                e -= 0.5 * dispersion(h, k);
            }
            const auto gs = oracle::ground_state(L, h);
            EXPECT_NEAR(gs.even.energy, e, 1e-10) << "L=" << L << " h=" << h;
        }
    }
}

TEST(OrderParameter, ReferenceValues) {
    EXPECT_DOUBLE_EQ(exact_mz_reference(0.0), 1.0);
    EXPECT_DOUBLE_EQ(exact_mz_reference(1.5), 0.0);
    EXPECT_NEAR(exact_mz_reference(0.6), std::pow(0.64, 0.125), 1e-15);
}

} // namespace
