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
 * Energy minimization over the 2p circuit angles, branch identification,
 * branch censuses, and total preparation time.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "circuit.hpp"
#include "coherent.hpp"
#include "common.hpp"
#include "fredholm.hpp"
#include "minimize.hpp"
#include "observables.hpp"

namespace vqcs {

inline constexpr double half_pi = 0.5 * pi;

/// Angle reduced to [0, pi/2); every gate has period pi/2.
inline double wrap_angle(double a) {
    double w = a - half_pi * std::floor(a / half_pi);
    if (w >= half_pi || w < 0.0) {
        w = 0.0;
    }
    return w;
}

inline AngleSchedule wrapped(const AngleSchedule &s) {
    AngleSchedule out = s;
    for (auto &g : out.gamma) {
        g = wrap_angle(g);
    }
    for (auto &b : out.beta) {
        b = wrap_angle(b);
    }
    return out;
}

/// (pi/2 - gamma, pi/2 - beta), wrapped.
inline AngleSchedule dual(const AngleSchedule &s) {
    AngleSchedule out = s;
    for (auto &g : out.gamma) {
        g = wrap_angle(half_pi - g);
    }
    for (auto &b : out.beta) {
        b = wrap_angle(half_pi - b);
    }
    return out;
}

struct PreparationTime {
    double total = 0.0;     // sum gamma + sum beta
    double canonical = 0.0; // min(T, pi p - T)
};

inline PreparationTime total_time(const AngleSchedule &s) {
    PreparationTime t;
    t.total = s.angle_sum();
    t.canonical = std::min(t.total, pi * s.depth() - t.total);
    return t;
}

/// FNV-1a hash of arg f_proj(k) on 16 fixed momenta, quantized to 1e-4.
inline std::uint64_t branch_key(const AngleSchedule &s, double h, InitialState init) {
    const auto seq = GateSequence::from_schedule(s);
    std::uint64_t hash = 1469598103934665603ULL;
    for (int m = 0; m < 16; ++m) {
        const double k = pi * (m + 0.5) / 16.0;
        const auto f = project(evolve_final(seq, init, k), h, k);
        double phase = std::arg(f.num * std::conj(f.den));
        auto q = static_cast<std::int64_t>(std::llround(phase / 1e-4));
        const auto period = static_cast<std::int64_t>(std::llround(2.0 * pi / 1e-4));
        q = ((q % period) + period) % period;
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= static_cast<std::uint64_t>((q >> (8 * byte)) & 0xff);
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

/// arg f_proj(k) on the 16 branch momenta, for distance-based clustering.
inline std::vector<double> branch_phases(const AngleSchedule &s, double h, InitialState init) {
    const auto seq = GateSequence::from_schedule(s);
    std::vector<double> out;
    for (int m = 0; m < 16; ++m) {
        const double k = pi * (m + 0.5) / 16.0;
        const auto f = project(evolve_final(seq, init, k), h, k);
        out.push_back(std::arg(f.num * std::conj(f.den)));
    }
    return out;
}

struct OptimizationResult {
    AngleSchedule schedule;
    double F = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double T = 0.0;
    double T_canonical = 0.0;
    std::uint64_t branch_key = 0;
    int L = 0;
    int restarts = 0;
    int restarts_converged = 0;
};

struct OptimizerSettings {
    int L = 0; // 0 selects 4p
    opt::BfgsOptions bfgs;
};

namespace detail {

inline int chain_size(int p, const OptimizerSettings &s) { return s.L > 0 ? s.L : std::max(4 * p, 4); }

inline opt::BfgsResult run_bfgs(double h, int p, InitialState init, const std::vector<double> &x0,
                                const OptimizerSettings &s) {
    const int L = chain_size(p, s);
    const opt::ValueAndGradient fg = [&](const opt::Vector &x, opt::Vector &g) {
        const auto seq = GateSequence::from_schedule(
            AngleSchedule::from_flat(std::span<const double>(x.data(), static_cast<std::size_t>(x.size()))));
        double F = 0.0;
        const auto grad = energy_gradient(seq, h, L, init, &F);
        g = Eigen::Map<const opt::Vector>(grad.data(), static_cast<Eigen::Index>(grad.size()));
        return F;
    };
    opt::Vector x = Eigen::Map<const opt::Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
    return opt::bfgs(fg, x, s.bfgs);
}

inline OptimizationResult finish(const opt::BfgsResult &r, double h, int p, InitialState init,
                                 const OptimizerSettings &s) {
    OptimizationResult out;
    const std::vector<double> x(r.x.data(), r.x.data() + r.x.size());
    out.schedule = wrapped(AngleSchedule::from_flat(x));
    out.L = chain_size(p, s);
    out.F = r.value;
    out.grad_norm = r.gradient_norm;
    out.iterations = r.iterations;
    out.converged = r.converged;
    const auto t = total_time(out.schedule);
    out.T = t.total;
    out.T_canonical = t.canonical;
    out.branch_key = branch_key(out.schedule, h, init);
    return out;
}

// a preferred over b: lower energy; near-ties broken by lower T, then angles
inline bool better(const OptimizationResult &a, const OptimizationResult &b) {
    if (a.converged != b.converged) {
        return a.converged;
    }
    const double tie = 1e-10;
    if (a.F < b.F - tie) {
        return true;
    }
    if (b.F < a.F - tie) {
        return false;
    }
    if (std::abs(a.T - b.T) > 1e-9) {
        return a.T < b.T;
    }
    return a.schedule.flat() < b.schedule.flat();
}

inline std::vector<double> random_start(int p, std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(0.0, half_pi);
    std::vector<double> x(static_cast<std::size_t>(2 * p));
    for (auto &v : x) {
        v = u(rng);
    }
    return x;
}

} // namespace detail

/// Best of `restarts` BFGS runs from uniform random angles in [0, pi/2)^{2p}.
inline OptimizationResult minimize(double h, int p, InitialState init, std::uint64_t seed,
                                   int restarts = 16, const OptimizerSettings &s = {}) {
    (void)Field{h};
    require(p >= 1, "depth must be >= 1");
    require(restarts >= 1, "need at least one restart");
    OptimizationResult best;
    bool have = false;
    int ok = 0;
    for (int r = 0; r < restarts; ++r) {
        const auto res = detail::finish(detail::run_bfgs(h, p, init, detail::random_start(p, seed, r), s),
                                        h, p, init, s);
        ok += res.converged ? 1 : 0;
        if (!have || detail::better(res, best)) {
            best = res;
            have = true;
        }
    }
    best.restarts = restarts;
    best.restarts_converged = ok;
    return best;
}

/// Single BFGS run from `warm`.
inline OptimizationResult minimize_warm(double h, int p, InitialState init, const AngleSchedule &warm,
                                        const OptimizerSettings &s = {}) {
    (void)Field{h};
    require(p >= 1 && warm.depth() == p, "warm start must have length 2p");
    auto res = detail::finish(detail::run_bfgs(h, p, init, warm.flat(), s), h, p, init, s);
    res.restarts = 1;
    res.restarts_converged = res.converged ? 1 : 0;
    return res;
}

/// Depth p+1 starting points built from a depth-p optimum: linear
/// interpolation of the angle profiles, and zero padding at either end.
inline std::vector<AngleSchedule> depth_extensions(const AngleSchedule &s) {
    const int p = s.depth();
    std::vector<AngleSchedule> out;
    AngleSchedule interp;
    for (int i = 0; i <= p; ++i) {
        const double a = static_cast<double>(i) / p;
        const auto at = [&](const std::vector<double> &v, int j) {
            return j < 0 || j >= p ? 0.0 : v[static_cast<std::size_t>(j)];
        };
        interp.gamma.push_back(a * at(s.gamma, i - 1) + (1.0 - a) * at(s.gamma, i));
        interp.beta.push_back(a * at(s.beta, i - 1) + (1.0 - a) * at(s.beta, i));
    }
    out.push_back(interp);
    AngleSchedule tail = s;
    tail.gamma.push_back(0.0);
    tail.beta.push_back(0.0);
    out.push_back(tail);
    AngleSchedule head = s;
    head.gamma.insert(head.gamma.begin(), 0.0);
    head.beta.insert(head.beta.begin(), 0.0);
    out.push_back(head);
    return out;
}

/// Optima for p = 1 .. p_max, each depth started from the extensions of the
/// previous optimum (and random restarts at p = 1).
inline std::vector<OptimizationResult> minimize_depth_ladder(double h, int p_max, InitialState init,
                                                             std::uint64_t seed, int restarts = 16,
                                                             const OptimizerSettings &s = {}) {
    require(p_max >= 1, "depth must be >= 1");
    std::vector<OptimizationResult> out;
    out.push_back(minimize(h, 1, init, seed, restarts, s));
    for (int p = 2; p <= p_max; ++p) {
        OptimizationResult best;
        bool have = false;
        for (const auto &start : depth_extensions(out.back().schedule)) {
            const auto res = minimize_warm(h, p, init, start, s);
            if (!have || detail::better(res, best)) {
                best = res;
                have = true;
            }
        }
        out.push_back(best);
    }
    return out;
}

struct Branch {
    AngleSchedule schedule;
    double F = 0.0;
    double m_Z = 0.0;
    double m_X = 0.0;
    double T = 0.0;
    double T_canonical = 0.0;
    std::uint64_t key = 0;
    int count = 0;
};

struct BranchCensus {
    int p = 0;
    double h = 0.0;
    int samples = 0;
    int converged = 0;
    double F_min = 0.0;
    std::vector<Branch> branches;
};

/// Random-start census of the equal-energy optima, clustered by the phase
/// profile of f_proj.
inline BranchCensus enumerate_branches(double h, int p, int samples, std::uint64_t seed,
                                       InitialState init = InitialState::AllZero,
                                       const OptimizerSettings &s = {}) {
    (void)Field{h};
    require(p >= 1 && samples >= 1, "need p >= 1 and samples >= 1");
    BranchCensus c;
    c.p = p;
    c.h = h;
    c.samples = samples;
    std::vector<OptimizationResult> found;
    for (int r = 0; r < samples; ++r) {
        auto res = detail::finish(detail::run_bfgs(h, p, init, detail::random_start(p, seed, r), s),
                                  h, p, init, s);
        if (res.converged) {
            ++c.converged;
            found.push_back(res);
        }
    }
    if (found.empty()) {
        return c;
    }
    c.F_min = std::min_element(found.begin(), found.end(), [](const auto &a, const auto &b) {
                  return a.F < b.F;
              })->F;
    std::vector<std::vector<double>> phases;
    for (const auto &res : found) {
        if (res.F > c.F_min + 1e-9) {
            continue;
        }
        const auto ph = branch_phases(res.schedule, h, init);
        std::size_t hit = phases.size();
        for (std::size_t b = 0; b < phases.size(); ++b) {
            double dist = 0.0;
            for (std::size_t m = 0; m < ph.size(); ++m) {
                const double d = std::remainder(ph[m] - phases[b][m], 2.0 * pi);
                dist = std::max(dist, std::abs(d));
            }
            if (dist < 1e-3) {
                hit = b;
                break;
            }
        }
        if (hit == phases.size()) {
            phases.push_back(ph);
            Branch br;
            br.schedule = res.schedule;
            br.F = res.F;
            br.T = res.T;
            br.T_canonical = res.T_canonical;
            br.key = res.branch_key;
            c.branches.push_back(br);
        } else {
            auto &br = c.branches[hit];
            if (res.T < br.T - 1e-9) {
                br.schedule = res.schedule;
                br.T = res.T;
                br.T_canonical = res.T_canonical;
                br.key = res.branch_key;
            }
        }
        ++c.branches[hit].count;
    }
    for (auto &br : c.branches) {
        const auto seq = GateSequence::from_schedule(br.schedule);
        br.m_X = magnetization_x(circuit_source(seq, init)).value;
        br.m_Z = circuit_magnetization_z(seq, init).value;
    }
    return c;
}

} // namespace vqcs
