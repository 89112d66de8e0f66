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
/**
 * @file
 * Transverse field Ising chain primitives: single-particle dispersion,
 * Bogoliubov angles and kernels, momentum quantization and exact
 * thermodynamic-limit reference values.
 */
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "common.hpp"
#include "quadrature.hpp"

namespace vqcs {

/// Magnetic field h of H(h) = -sum Z_j Z_{j+1} - h sum X_j.
struct Field {
    double h = 0.0;

    constexpr Field() = default;
    explicit Field(double value) : h(value) {
        require(std::isfinite(value) && value >= 0.0,
                "field must be finite and non-negative");
    }
    constexpr operator double() const { return h; }
};

enum class Sector { NS, R, Continuum };

/// Momenta of a fermion sector, or a quadrature grid on [0, pi].
struct MomentumGrid {
    Sector sector = Sector::NS;
    int size = 0;
    std::vector<double> momenta;
    std::vector<double> weights; // continuum only

    /// Positive momenta (the NS+ / R+ subsets); for continuum grids all nodes.
    [[nodiscard]] std::vector<double> positive() const {
        std::vector<double> out;
        for (double k : momenta) {
            if (k > 0.0) {
                out.push_back(k);
            }
        }
        return out;
    }
};

/// NS momenta 2 pi (n + 1/2) / L and R momenta 2 pi n / L, n = -L/2 .. L/2-1.
inline MomentumGrid momentum_grid(Sector sector, int L) {
    require(sector != Sector::Continuum, "use continuum_grid for quadrature");
    require(L > 0 && L % 2 == 0, "L must be an even positive integer");
    MomentumGrid g;
    g.sector = sector;
    g.size = L;
    g.momenta.reserve(static_cast<std::size_t>(L));
    const double shift = sector == Sector::NS ? 0.5 : 0.0;
    for (int n = -L / 2; n < L / 2; ++n) {
        g.momenta.push_back(2.0 * pi * (n + shift) / L);
    }
    return g;
}

/// Gauss-Legendre nodes on [0, pi]; the weights sum to pi.
inline MomentumGrid continuum_grid(int nodes) {
    const auto rule = gauss_legendre(nodes, 0.0, pi);
    MomentumGrid g;
    g.sector = Sector::Continuum;
    g.size = nodes;
    g.momenta = rule.nodes;
    g.weights = rule.weights;
    return g;
}

/// epsilon_h(k) = 2 sqrt(1 + h^2 - 2 h cos k), with the value -2 (1 - h) at k = 0.
/// The signed zero-mode value accounts for the always-occupied k = 0 mode of
/// the Ramond sector.
inline double dispersion(double h, double k) {
    if (k == 0.0) {
        return -2.0 * (1.0 - h);
    }
    return 2.0 * std::sqrt(1.0 + h * h - 2.0 * h * std::cos(k));
}

/// Bogoliubov angle theta_k^h, the phase of (h - e^{ik}).
/// h = infinity is represented by +inf and gives 0.
/// At k = 0 the continuous extension is used: pi for h < 1, 0 for h >= 1.
inline double bogoliubov_angle(double h, double k) {
    if (std::isinf(h)) {
        return 0.0;
    }
    if (k == 0.0) {
        return h < 1.0 ? pi : 0.0;
    }
    return std::atan2(-std::sin(k), h - std::cos(k));
}

/// Half of the angle difference, (theta^{h_to} - theta^{h_from}) / 2.
inline double bogoliubov_half_angle(double h_to, double h_from, double k) {
    return 0.5 * (bogoliubov_angle(h_to, k) - bogoliubov_angle(h_from, k));
}

/// K_{h_to h_from}(k) = tan((theta^{h_to} - theta^{h_from}) / 2).
/// Throws NumericalError at a pole of the tangent.
inline double bogoliubov_kernel(double h_to, double h_from, double k) {
    const double half = bogoliubov_half_angle(h_to, h_from, k);
    const double c = std::cos(half);
    if (std::abs(c) < 1e-14) {
        throw NumericalError("bogoliubov_kernel: pole of the tangent");
    }
    return std::sin(half) / c;
}

/// F_infinity(h) = -(1 / 2 pi) int_0^pi epsilon_h(k) dk, 256-node Gauss-Legendre.
inline double ground_energy_density_inf(double h, int nodes = 256) {
    const auto rule = gauss_legendre(nodes, 0.0, pi);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * dispersion(h, rule.nodes[i]);
    }
    return -acc / (2.0 * pi);
}

/// Thermodynamic-limit order parameter (1 - h^2)^{1/8} for h <= 1, else 0.
inline double exact_mz_reference(double h) {
    require(h >= 0.0, "field must be non-negative");
    return h <= 1.0 ? std::pow(1.0 - h * h, 0.125) : 0.0;
}

/// Thermodynamic-limit ground-state X magnetization, -dF_inf/dh.
inline double exact_mx_reference(double h, int nodes = 512) {
    const auto rule = gauss_legendre(nodes, 0.0, pi);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double k = rule.nodes[i];
        const double e = std::sqrt(1.0 + h * h - 2.0 * h * std::cos(k));
        if (e > 0.0) {
            acc += rule.weights[i] * (h - std::cos(k)) / e;
        }
    }
    return acc / pi;
}

} // namespace vqcs
