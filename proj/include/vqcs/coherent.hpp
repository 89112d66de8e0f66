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
 * Evolution of the pair amplitude f(k) of a fermionic coherent state
 * through a circuit of coherent gates.
 *
 * The amplitude is carried in the h = infinity Bogoliubov frame, where X
 * gates act as phases. Frame changes and gate maps are written with
 * s = sin(k/2), c = cos(k/2) instead of tan(k/2), so k = 0 and k = +-pi need
 * no special casing.
 *
 * Trajectory entries follow the recurrence convention: the entry after an X
 * gate is expressed in the h = infinity frame, every other entry in the
 * h = 0 frame.
 */
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "circuit.hpp"
#include "common.hpp"
#include "ising.hpp"
#include "projective.hpp"

namespace vqcs {

namespace detail {
struct HalfAngles {
    double s;
    double c;
};
inline HalfAngles half_angles(double k) { return {std::sin(0.5 * k), std::cos(0.5 * k)}; }
} // namespace detail

/// f -> (1 - i tan(k/2) f) / (f - i tan(k/2)).
inline Mobius zero_to_infinity_frame(double k) {
    const auto [s, c] = detail::half_angles(k);
    return {cplx{0.0, -s}, c, c, cplx{0.0, -s}};
}

/// f -> (1 + i tan(k/2) f) / (f + i tan(k/2)).
inline Mobius infinity_to_zero_frame(double k) {
    const auto [s, c] = detail::half_angles(k);
    return {cplx{0.0, s}, c, c, cplx{0.0, s}};
}

/// f -> (i K + f) / (1 + i K f) with K = K_{h_to h_from}(k).
/// Either field may be +infinity.
inline Mobius basis_change(double h_to, double h_from, double k) {
    const double half = bogoliubov_half_angle(h_to, h_from, k);
    const double c = std::cos(half);
    const double s = std::sin(half);
    return {c, cplx{0.0, s}, cplx{0.0, s}, c};
}

/// Action of exp(i t sum G_j) on the h = infinity frame amplitude.
inline Mobius gate_map(GateKind kind, double t, double k) {
    const cplx e = std::exp(cplx{0.0, -4.0 * t});
    if (kind == GateKind::X) {
        return {e, 0.0, 0.0, 1.0};
    }
    const auto [s, c] = detail::half_angles(k);
    const cplx off = I * s * c * (1.0 - e);
    const cplx a = c * c + s * s * e;
    const cplx d = s * s + c * c * e;
    if (kind == GateKind::ZZ) {
        return {a, off, -off, d};
    }
    return {a, -off, off, d};
}

/// d gate_map / dt.
inline Mobius gate_map_derivative(GateKind kind, double t, double k) {
    const cplx e = std::exp(cplx{0.0, -4.0 * t});
    const cplx de = cplx{0.0, -4.0} * e;
    if (kind == GateKind::X) {
        return {de, 0.0, 0.0, 0.0};
    }
    const auto [s, c] = detail::half_angles(k);
    const cplx off = -I * s * c * de;
    if (kind == GateKind::ZZ) {
        return {s * s * de, off, -off, c * c * de};
    }
    return {s * s * de, -off, off, c * c * de};
}

/// f_0(k): 0 for |0...0>, 1 / (i tan(k/2)) for |+...+>, in the h = 0 frame.
inline ProjectiveAmplitude initial_amplitude(InitialState init, double k) {
    if (init == InitialState::AllZero) {
        return {0.0, 1.0};
    }
    const auto [s, c] = detail::half_angles(k);
    return {c, cplx{0.0, s}};
}

struct AmplitudeTrajectory {
    /// f_0 ... f_n, one entry per gate plus the initial amplitude.
    std::vector<ProjectiveAmplitude> steps;
    /// Final amplitude in the h = infinity frame (g_{2p} for canonical circuits).
    ProjectiveAmplitude infinity_frame;
    /// Final amplitude in the h = 0 frame (f_{2p}).
    ProjectiveAmplitude zero_frame;
};

inline AmplitudeTrajectory evolve(const GateSequence &seq, InitialState init, double k) {
    AmplitudeTrajectory tr;
    tr.steps.reserve(seq.size() + 1);
    const auto f0 = initial_amplitude(init, k);
    tr.steps.push_back(f0);
    const Mobius to_zero = infinity_to_zero_frame(k);
    ProjectiveAmplitude v = zero_to_infinity_frame(k)(f0).normalized();
    for (const auto &g : seq.gates()) {
        v = gate_map(g.kind, g.angle, k)(v).normalized();
        tr.steps.push_back(g.kind == GateKind::X ? v : to_zero(v).normalized());
    }
    tr.infinity_frame = v;
    tr.zero_frame = to_zero(v).normalized();
    return tr;
}

/// Final h = 0 frame amplitude only.
inline ProjectiveAmplitude evolve_final(const GateSequence &seq, InitialState init, double k) {
    ProjectiveAmplitude v = zero_to_infinity_frame(k)(initial_amplitude(init, k));
    for (const auto &g : seq.gates()) {
        v = gate_map(g.kind, g.angle, k)(v).normalized();
    }
    return infinity_to_zero_frame(k)(v).normalized();
}

/// Final h = infinity frame amplitude only.
inline ProjectiveAmplitude evolve_final_infinity(const GateSequence &seq, InitialState init,
                                                 double k) {
    ProjectiveAmplitude v = zero_to_infinity_frame(k)(initial_amplitude(init, k));
    for (const auto &g : seq.gates()) {
        v = gate_map(g.kind, g.angle, k)(v).normalized();
    }
    return v;
}

struct TrajectoryGradient {
    AmplitudeTrajectory trajectory;
    /// d f_{2p}(k) / d angle_j for every gate j (h = 0 frame value).
    std::vector<cplx> df;
    /// Same derivatives of the homogeneous pair, consistent with
    /// trajectory.zero_frame; usable at poles where df is infinite.
    std::vector<ProjectiveAmplitude> dpair;
};

/// Forward-mode derivatives carried through every map: O(n^2) per momentum.
inline TrajectoryGradient evolve_with_grad(const GateSequence &seq, InitialState init,
                                           double k) {
    TrajectoryGradient out;
    auto &tr = out.trajectory;
    const std::size_t n = seq.size();
    tr.steps.reserve(n + 1);
    const auto f0 = initial_amplitude(init, k);
    tr.steps.push_back(f0);
    const Mobius to_zero = infinity_to_zero_frame(k);
    ProjectiveAmplitude v = zero_to_infinity_frame(k)(f0);
    std::vector<ProjectiveAmplitude> dv;
    dv.reserve(n);
    const auto gates = seq.gates();
    for (std::size_t j = 0; j < n; ++j) {
        const Mobius m = gate_map(gates[j].kind, gates[j].angle, k);
        const Mobius dm = gate_map_derivative(gates[j].kind, gates[j].angle, k);
        for (auto &d : dv) {
            d = m(d);
        }
        dv.push_back(dm(v));
        v = m(v);
        // rescale value and derivatives together; f = num/den is unchanged
        const double s = std::max(std::abs(v.num), std::abs(v.den));
        v = {v.num / s, v.den / s};
        for (auto &d : dv) {
            d = {d.num / s, d.den / s};
        }
        tr.steps.push_back(gates[j].kind == GateKind::X ? v : to_zero(v).normalized());
    }
    tr.infinity_frame = v;
    const ProjectiveAmplitude z = to_zero(v);
    tr.zero_frame = z;
    out.df.reserve(n);
    out.dpair.reserve(n);
    for (const auto &d : dv) {
        const ProjectiveAmplitude dz = to_zero(d);
        out.dpair.push_back(dz);
        out.df.push_back((dz.num * z.den - z.num * dz.den) / (z.den * z.den));
    }
    return out;
}

/// Weight |F|^2 / (1 + |F|^2) of F = post(final infinity-frame amplitude) and
/// its derivatives with respect to every gate angle, by reverse accumulation:
/// O(n) per momentum.
struct WeightGradient {
    double weight = 0.0;
    std::vector<double> grad;
};

inline WeightGradient projected_weight_with_grad(const GateSequence &seq, InitialState init,
                                                 double k, const Mobius &post) {
    const auto gates = seq.gates();
    const std::size_t n = gates.size();
    std::vector<ProjectiveAmplitude> states;
    states.reserve(n + 1);
    ProjectiveAmplitude v = zero_to_infinity_frame(k)(initial_amplitude(init, k)).normalized();
    states.push_back(v);
    for (const auto &g : gates) {
        v = gate_map(g.kind, g.angle, k)(v).normalized();
        states.push_back(v);
    }
    const ProjectiveAmplitude w = post(v);
    const double a = std::norm(w.num);
    const double b = std::norm(w.den);
    const double sum = a + b;
    WeightGradient out;
    out.weight = a / sum;
    out.grad.assign(n, 0.0);
    // dw = 2 Re(r . dF) with r = (conj(num) |den|^2, -conj(den) |num|^2) / sum^2
    std::array<cplx, 2> r{std::conj(w.num) * (b / (sum * sum)),
                          -std::conj(w.den) * (a / (sum * sum))};
    r = post.left(r);
    // states are rescaled copies; rescaling constants drop out because the
    // weight is homogeneous of degree zero, but the row vector must follow
    // the same scale as the stored states.
    for (std::size_t j = n; j-- > 0;) {
        const Mobius m = gate_map(gates[j].kind, gates[j].angle, k);
        const Mobius dm = gate_map_derivative(gates[j].kind, gates[j].angle, k);
        const ProjectiveAmplitude full = m(states[j]);
        const double scale = std::max(std::abs(full.num), std::abs(full.den));
        const ProjectiveAmplitude dv = dm(states[j]);
        out.grad[j] = 2.0 * std::real(r[0] * dv.num + r[1] * dv.den) / scale;
        r = m.left(r);
        r = {r[0] / scale, r[1] / scale};
    }
    return out;
}

/// f_proj = (i K_{h0} + f) / (1 + i K_{h0} f).
inline ProjectiveAmplitude project(const ProjectiveAmplitude &f2p, double h, double k) {
    return basis_change(h, 0.0, k)(f2p).normalized();
}

/// g_{2p} = (1 - i tan(k/2) f) / (f - i tan(k/2)).
inline ProjectiveAmplitude g_transform(const ProjectiveAmplitude &f2p, double k) {
    return zero_to_infinity_frame(k)(f2p).normalized();
}

/// Post-quench amplitude in the h = 0 frame: ground state of H(h0) evolved for
/// time t with H(h).
inline ProjectiveAmplitude quench_amplitude(double h0, double h, double t, double k) {
    require(t >= 0.0, "quench time must be non-negative");
    ProjectiveAmplitude ft = basis_change(h, h0, k)(ProjectiveAmplitude{0.0, 1.0});
    ft.num *= std::exp(cplx{0.0, -2.0 * t * dispersion(h, k)});
    return basis_change(0.0, h, k)(ft).normalized();
}

/// f_t = i K_{h h0}(k) exp(-2 i t eps_h(k)) in the h frame.
inline ProjectiveAmplitude quench_amplitude_target_frame(double h0, double h, double t,
                                                         double k) {
    ProjectiveAmplitude ft = basis_change(h, h0, k)(ProjectiveAmplitude{0.0, 1.0});
    ft.num *= std::exp(cplx{0.0, -2.0 * t * dispersion(h, k)});
    return ft;
}

} // namespace vqcs
