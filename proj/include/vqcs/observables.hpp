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
 * Closed-form expectation values of the circuit state: finite-size energy
 * density and its gradient, ground-state overlap, and the infinite-chain X
 * magnetization and connected XX correlation.
 */
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "circuit.hpp"
#include "coherent.hpp"
#include "common.hpp"
#include "ising.hpp"
#include "projective.hpp"
#include "quadrature.hpp"

namespace vqcs {

/// Per-momentum source of the final h = 0 frame amplitude f_{2p}(k).
using AmplitudeSource = std::function<ProjectiveAmplitude(double)>;

inline AmplitudeSource circuit_source(const GateSequence &seq, InitialState init) {
    return [seq, init](double k) { return evolve_final(seq, init, k); };
}

struct ObservableReport {
    double F = 0.0;
    cplx overlap{0.0, 0.0};
    double m_X = 0.0;
    std::map<int, double> m_XX;
    double m_Z = 0.0;
    bool m_Z_sign_known = true;
    int L = 0;
    int nodes = 0;
    int fredholm_nodes = 0;
    bool m_X_converged = true;
    bool m_Z_converged = true;
    bool singular = false;
};

namespace detail {

inline void check_size(int L) { require(L >= 2 && L % 2 == 0, "L must be even and >= 2"); }

// Weight of f_proj(k); the Ramond zero mode is always occupied.
inline double projected_weight(const ProjectiveAmplitude &f2p, double h, double k) {
    return project(f2p, h, k).weight();
}

template <class Fn> void for_each_momentum_pair(Sector sector, int L, Fn &&fn) {
    // fn(k, multiplicity) over k >= 0 and k = -pi, using weight symmetry in k
    const double shift = sector == Sector::NS ? 0.5 : 0.0;
    for (int n = 0; n < L / 2; ++n) {
        const double k = 2.0 * pi * (n + shift) / L;
        fn(k, k == 0.0 ? 1 : 2);
    }
    if (sector == Sector::R) {
        fn(-pi, 1);
    }
}

} // namespace detail

/// Energy density F_L of the circuit state with respect to H(h) on L sites.
inline double energy_density(const GateSequence &seq, double h, int L, InitialState init) {
    detail::check_size(L);
    (void)Field{h};
    double weighted = 0.0;
    double plain = 0.0;
    const bool zero = init == InitialState::AllZero;
    const auto visit = [&](double k, int mult) {
        const double e = dispersion(h, k);
        const double w = k == 0.0 ? 1.0 : detail::projected_weight(evolve_final(seq, init, k), h, k);
        weighted += mult * e * w;
        plain += mult * e;
    };
    detail::for_each_momentum_pair(Sector::NS, L, visit);
    if (zero) {
        detail::for_each_momentum_pair(Sector::R, L, visit);
        return weighted / (2.0 * L) - plain / (4.0 * L);
    }
    return weighted / L - plain / (2.0 * L);
}

inline double energy_density(const AngleSchedule &s, double h, int L, InitialState init) {
    return energy_density(GateSequence::from_schedule(s), h, L, init);
}

/// dF_L / d angle_j for every gate, by reverse accumulation through each
/// momentum's Moebius chain.
inline std::vector<double> energy_gradient(const GateSequence &seq, double h, int L,
                                           InitialState init, double *value = nullptr) {
    detail::check_size(L);
    (void)Field{h};
    std::vector<double> grad(seq.size(), 0.0);
    double weighted = 0.0;
    double plain = 0.0;
    const bool zero = init == InitialState::AllZero;
    const auto visit = [&](double k, int mult) {
        const double e = dispersion(h, k);
        plain += mult * e;
        if (k == 0.0) {
            weighted += mult * e;
            return;
        }
        const Mobius post = basis_change(h, 0.0, k) * infinity_to_zero_frame(k);
        const auto wg = projected_weight_with_grad(seq, init, k, post);
        weighted += mult * e * wg.weight;
        for (std::size_t j = 0; j < grad.size(); ++j) {
            grad[j] += mult * e * wg.grad[j];
        }
    };
    detail::for_each_momentum_pair(Sector::NS, L, visit);
    double scale = 1.0 / L;
    if (zero) {
        detail::for_each_momentum_pair(Sector::R, L, visit);
        scale = 1.0 / (2.0 * L);
    }
    for (auto &g : grad) {
        g *= scale;
    }
    if (value != nullptr) {
        *value = zero ? weighted / (2.0 * L) - plain / (4.0 * L) : weighted / L - plain / (2.0 * L);
    }
    return grad;
}

namespace detail {

// log of e^{-i L sum(angles)} prod_{k in S+} prod_{j<n} [sin(k/2) + i (-1)^j cos(k/2) f_j(k)];
// with `basis_factor` each momentum also carries (1 + i K_{h0} f_n) / sqrt(1 + K_{h0}^2).
inline cplx log_sector_amplitude(const GateSequence &seq, int L, InitialState init,
                                 Sector sector, const double *basis_field = nullptr) {
    cplx acc{0.0, -static_cast<double>(L) * seq.angle_sum()};
    const double shift = sector == Sector::NS ? 0.5 : 0.0;
    for (int n = 0; n < L / 2; ++n) {
        const double k = 2.0 * pi * (n + shift) / L;
        if (k == 0.0) {
            continue;
        }
        const auto tr = evolve(seq, init, k);
        const double s = std::sin(0.5 * k);
        const double c = std::cos(0.5 * k);
        for (std::size_t j = 0; j + 1 < tr.steps.size(); ++j) {
            const auto &f = tr.steps[j];
            const double sign = j % 2 == 0 ? 1.0 : -1.0;
            acc += std::log((s * f.den + I * sign * c * f.num) / f.den);
        }
        if (basis_field != nullptr) {
            const double half = bogoliubov_half_angle(*basis_field, 0.0, k);
            const auto &f = tr.zero_frame;
            acc += std::log((std::cos(half) * f.den + I * std::sin(half) * f.num) / f.den);
        }
    }
    return acc;
}

inline cplx log_sector_overlap(const GateSequence &seq, double h, int L, InitialState init,
                               Sector sector) {
    cplx acc = log_sector_amplitude(seq, L, init, sector, &h);
    if (init == InitialState::AllPlus) {
        for (int n = 0; n < L / 2; ++n) {
            acc += std::log(std::sin(pi * (n + 0.5) / L));
        }
    }
    return acc;
}

} // namespace detail

/// Overlap of the circuit state with the ground state of H(h) on L sites.
/// The even-parity ground state is used, or (|NS> + |R>)/sqrt(2) with
/// <R|Z|NS> > 0 when `symmetry_broken` is set.
inline cplx overlap(const GateSequence &seq, double h, int L, InitialState init,
                    bool symmetry_broken = false) {
    detail::check_size(L);
    (void)Field{h};
    require(seq.is_canonical(), "overlap requires an alternating X/ZZ circuit");
    const cplx ns = std::exp(detail::log_sector_overlap(seq, h, L, init, Sector::NS));
    if (init == InitialState::AllPlus) {
        return symmetry_broken ? ns / std::sqrt(2.0) : ns;
    }
    if (!symmetry_broken) {
        return ns / std::sqrt(2.0);
    }
    const cplx r = std::exp(detail::log_sector_overlap(seq, h, L, init, Sector::R));
    return 0.5 * (ns + std::exp(cplx{0.0, -2.0 * seq.x_angle_sum()}) * r);
}

/// |<GS(h)|psi>| for any gate sequence, from the projected pair amplitudes:
/// prod_{k in NS+} 1 / sqrt(1 + |f_proj(k)|^2), halved in norm-square for
/// |0...0>, whose NS component carries weight 1/2.
inline double overlap_modulus(const GateSequence &seq, double h, int L, InitialState init) {
    detail::check_size(L);
    (void)Field{h};
    double log_mod = 0.0;
    for (int n = 0; n < L / 2; ++n) {
        const double k = 2.0 * pi * (n + 0.5) / L;
        const auto f = project(evolve_final(seq, init, k), h, k);
        log_mod += std::log(std::abs(f.den)) - 0.5 * std::log(std::norm(f.num) + std::norm(f.den));
    }
    const double m = std::exp(log_mod);
    return init == InitialState::AllZero ? m / std::sqrt(2.0) : m;
}

/// Thermodynamic-limit X-profile integrands tabulated on a [0, pi] rule.
struct XProfile {
    QuadratureRule rule;
    std::vector<double> weight;  // |g|^2 / (1 + |g|^2)
    std::vector<cplx> coherence; // g / (1 + |g|^2)
};

inline XProfile x_profile(const AmplitudeSource &f2p, int nodes) {
    require(nodes >= 2, "need at least two quadrature nodes");
    XProfile out;
    out.rule = gauss_legendre(nodes, 0.0, pi);
    out.weight.reserve(out.rule.nodes.size());
    out.coherence.reserve(out.rule.nodes.size());
    for (double k : out.rule.nodes) {
        const auto g = g_transform(f2p(k), k);
        const double sum = std::norm(g.num) + std::norm(g.den);
        out.weight.push_back(std::norm(g.num) / sum);
        out.coherence.push_back(g.num * std::conj(g.den) / sum);
    }
    return out;
}

inline double magnetization_x(const XProfile &prof) {
    double acc = 0.0;
    for (std::size_t i = 0; i < prof.weight.size(); ++i) {
        acc += prof.rule.weights[i] * prof.weight[i];
    }
    return 1.0 - 2.0 * acc / pi;
}

/// Connected <X_0 X_l> - <X>^2 from the two Fourier integrals |I1|^2 - |I2|^2.
/// g(-k) = -g(k), so I1 is a sine and I2 a cosine transform on [0, pi].
inline double correlation_xx(const XProfile &prof, int ell) {
    require(ell >= 1, "separation must be >= 1");
    cplx i1{0.0, 0.0};
    double i2 = 0.0;
    for (std::size_t i = 0; i < prof.weight.size(); ++i) {
        const double k = prof.rule.nodes[i];
        const double w = prof.rule.weights[i];
        i1 += w * prof.coherence[i] * std::sin(k * ell);
        i2 += w * prof.weight[i] * std::cos(k * ell);
    }
    i1 *= 2.0 / pi;
    i2 *= 2.0 / pi;
    return std::norm(i1) - i2 * i2;
}

struct ConvergedValue {
    double value = 0.0;
    bool converged = false;
};

/// m_X on `nodes` points, flagged converged when doubling changes it by < 1e-10.
inline ConvergedValue magnetization_x(const AmplitudeSource &f2p, int nodes = 512) {
    const double a = magnetization_x(x_profile(f2p, nodes));
    const double b = magnetization_x(x_profile(f2p, 2 * nodes));
    return {b, std::abs(a - b) < 1e-10};
}

inline double correlation_xx(const AmplitudeSource &f2p, int ell, int nodes = 512) {
    return correlation_xx(x_profile(f2p, nodes), ell);
}

} // namespace vqcs
