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
 * Reproduction pipelines built on the optimizer and the observables:
 * energy-scaling fits, susceptibility, correlation length, finite-depth
 * scaling collapse, exact preparation, quench series and field sweeps.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "coherent.hpp"
#include "common.hpp"
#include "fredholm.hpp"
#include "ising.hpp"
#include "minimize.hpp"
#include "observables.hpp"
#include "optimizer.hpp"
#include "oracle.hpp"

namespace vqcs {

/// Every observable of one circuit: energy density and overlap on L sites,
/// m_X, m_XX(l) and m_Z in the thermodynamic limit.
inline ObservableReport observable_report(const GateSequence &seq, double h, int L, InitialState init,
                                          const std::vector<int> &ells = {}, int nodes = 512) {
    ObservableReport r;
    r.L = L;
    r.nodes = nodes;
    r.F = energy_density(seq, h, L, init);
    r.overlap = seq.is_canonical() ? overlap(seq, h, L, init) : cplx{overlap_modulus(seq, h, L, init), 0.0};
    const auto src = circuit_source(seq, init);
    const auto mx = magnetization_x(src, nodes);
    r.m_X = mx.value;
    r.m_X_converged = mx.converged;
    const auto prof = x_profile(src, 2 * nodes);
    for (int l : ells) {
        r.m_XX[l] = correlation_xx(prof, l);
    }
    const auto mz = circuit_magnetization_z(seq, init);
    r.m_Z = mz.value;
    r.m_Z_sign_known = mz.sign_known;
    r.m_Z_converged = mz.converged;
    r.fredholm_nodes = mz.nodes;
    r.singular = mz.singular;
    return r;
}

enum class Regime { Sub, Critical, Super };

inline const char *to_string(Regime r) {
    switch (r) {
    case Regime::Sub:
        return "sub";
    case Regime::Critical:
        return "critical";
    case Regime::Super:
        return "super";
    }
    return "?";
}

struct EnergyScalingFit {
    Regime regime = Regime::Critical;
    double A = 0.0;      // sub: prefactor of exp(-lambda p)
    double lambda = 0.0; // sub: decay rate
    double c = 0.0;      // critical: leading coefficient of p^-2
    double c_single = 0.0; // critical: one-parameter least-squares c p^-2
    double B = 0.0;      // super: prefactor of p^slope
    double slope = 0.0;  // log-log slope
    double r2 = 0.0;
    bool regime_mismatch = false;
};

/// Least-squares fits of F - F_inf against depth.
/// sub: ln r = ln A - lambda p.  super: ln r = ln B + slope ln p.
/// critical: r p^2 = c + d / p + e / p^2, c being the leading coefficient.
inline EnergyScalingFit fit_energy_scaling(const std::vector<int> &p,
                                           const std::vector<double> &residual, Regime regime) {
    require(p.size() == residual.size(), "depths and residuals must pair up");
    require(p.size() >= 6, "need at least 6 depths");
    for (double r : residual) {
        require(r > 0.0 && std::isfinite(r), "residuals must be positive");
    }
    EnergyScalingFit out;
    out.regime = regime;
    std::vector<double> lp;
    std::vector<double> lr;
    std::vector<double> pd;
    for (std::size_t i = 0; i < p.size(); ++i) {
        pd.push_back(p[i]);
        lp.push_back(std::log(static_cast<double>(p[i])));
        lr.push_back(std::log(residual[i]));
    }
    const auto loglog = opt::linear_fit(lp, lr);
    out.slope = loglog.slope;
    switch (regime) {
    case Regime::Sub: {
        const auto f = opt::linear_fit(pd, lr);
        out.lambda = -f.slope;
        out.A = std::exp(f.intercept);
        out.r2 = f.r2;
        break;
    }
    case Regime::Super:
        out.B = std::exp(loglog.intercept);
        out.r2 = loglog.r2;
        break;
    case Regime::Critical: {
        const auto n = static_cast<Eigen::Index>(p.size());
        Eigen::MatrixXd X(n, 3);
        Eigen::VectorXd y(n);
        double num = 0.0;
        double den = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double q = pd[static_cast<std::size_t>(i)];
            X(i, 0) = 1.0;
            X(i, 1) = 1.0 / q;
            X(i, 2) = 1.0 / (q * q);
            y[i] = residual[static_cast<std::size_t>(i)] * q * q;
            num += residual[static_cast<std::size_t>(i)] / (q * q);
            den += 1.0 / (q * q * q * q);
        }
        const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
        out.c = coef[0];
        out.c_single = num / den;
        const double mean = y.mean();
        const double ss_tot = (y.array() - mean).square().sum();
        const double ss_res = (y - X * coef).squaredNorm();
        out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
        break;
    }
    }
    out.regime_mismatch = out.r2 < 0.99;
    return out;
}

/// Optimum at every depth 1..p_max (depth ladder) with F - F_inf attached.
struct DepthSeries {
    double h = 0.0;
    std::vector<OptimizationResult> optima;
    std::vector<double> residual;
};

inline DepthSeries depth_series(double h, int p_max, InitialState init, std::uint64_t seed,
                                int restarts = 16) {
    DepthSeries s;
    s.h = h;
    s.optima = minimize_depth_ladder(h, p_max, init, seed, restarts);
    const double finf = ground_energy_density_inf(h);
    for (const auto &o : s.optima) {
        s.residual.push_back(o.F - finf);
    }
    return s;
}

struct SusceptibilityResult {
    double chi = 0.0;
    double m_minus = 0.0;
    double m_plus = 0.0;
    bool converged = false;
    OptimizationResult minus;
    OptimizationResult plus;
};

/// chi_X = (m_X(h + dh) - m_X(h - dh)) / (2 dh), each side re-optimized from
/// the centre-field optimum so both stay on its branch.
inline SusceptibilityResult susceptibility_x(double h, const AngleSchedule &center,
                                             InitialState init = InitialState::AllZero,
                                             double dh = 1e-3) {
    require(dh > 0.0 && h - dh >= 0.0, "need dh > 0 and h - dh >= 0");
    const int p = center.depth();
    SusceptibilityResult r;
    r.minus = minimize_warm(h - dh, p, init, center);
    r.plus = minimize_warm(h + dh, p, init, center);
    const auto mx = [&](const OptimizationResult &o) {
        return magnetization_x(circuit_source(GateSequence::from_schedule(o.schedule), init)).value;
    };
    r.m_minus = mx(r.minus);
    r.m_plus = mx(r.plus);
    r.chi = (r.m_plus - r.m_minus) / (2.0 * dh);
    r.converged = r.minus.converged && r.plus.converged;
    return r;
}

/// Optimizes at h first (random restarts), then as above.
inline SusceptibilityResult susceptibility_x(double h, int p, InitialState init, std::uint64_t seed,
                                             double dh = 1e-3, int restarts = 16) {
    const auto c = minimize(h, p, init, seed, restarts);
    auto r = susceptibility_x(h, c.schedule, init, dh);
    r.converged = r.converged && c.converged;
    return r;
}

struct CorrelationLength {
    double xi = 0.0;
    int window_start = 0;
    int window_end = 0;
    bool found = false;
    std::vector<double> m_xx; // m_xx[l - 1], l = 1 .. l_max
};

/// Exponential decay length of m_XX(l). The local decay rate of ln m falls
/// like 2/l in the power-law window, levels off in the exponential tail and
/// rises again towards the light cone l = 2p. xi is the inverse slope of a
/// straight-line fit of ln m over the window where the rate, averaged over
/// +-w sites to smooth the even/odd ripple, stays within 10% of its minimum.
/// Only l whose m_XX is stable under node doubling to 1e-3 are used.
inline CorrelationLength correlation_length(const AngleSchedule &s, InitialState init = InitialState::AllZero,
                                            int nodes = 4096) {
    const int p = s.depth();
    require(p >= 1, "empty schedule");
    CorrelationLength out;
    const auto src = circuit_source(GateSequence::from_schedule(s), init);
    const auto coarse = x_profile(src, nodes);
    const auto fine = x_profile(src, 2 * nodes);
    const int l_max = 2 * p;
    int usable = 0;
    for (int l = 1; l <= l_max; ++l) {
        const double a = correlation_xx(coarse, l);
        const double b = correlation_xx(fine, l);
        out.m_xx.push_back(b);
        if (usable == l - 1 && b > 0.0 && std::abs(a - b) < 1e-3 * b) {
            usable = l;
        }
    }
    const int w = std::max(2, p / 10);
    if (usable < 4 * w + 4) {
        return out;
    }
    const auto lnm = [&](int l) { return std::log(out.m_xx[static_cast<std::size_t>(l - 1)]); };
    std::vector<double> rate(static_cast<std::size_t>(usable + 1), std::numeric_limits<double>::infinity());
    int best = 0;
    for (int l = 1 + w; l + w <= usable; ++l) {
        rate[static_cast<std::size_t>(l)] = (lnm(l - w) - lnm(l + w)) / (2.0 * w);
        if (best == 0 || rate[static_cast<std::size_t>(l)] < rate[static_cast<std::size_t>(best)]) {
            best = l;
        }
    }
    const double floor = rate[static_cast<std::size_t>(best)];
    if (floor <= 0.0 || best + w >= usable) {
        return out; // no turn-over before the usable range ends
    }
    int lo = best;
    int hi = best;
    while (lo - 1 >= 1 + w && rate[static_cast<std::size_t>(lo - 1)] < 1.1 * floor) {
        --lo;
    }
    while (hi + 1 + w <= usable && rate[static_cast<std::size_t>(hi + 1)] < 1.1 * floor) {
        ++hi;
    }
    std::vector<double> x;
    std::vector<double> y;
    for (int l = lo - w; l <= hi + w; ++l) {
        x.push_back(l);
        y.push_back(lnm(l));
    }
    const auto f = opt::linear_fit(x, y);
    if (f.slope >= 0.0) {
        return out;
    }
    out.xi = -1.0 / f.slope;
    out.window_start = lo - w;
    out.window_end = hi + w;
    out.found = true;
    return out;
}

enum class CollapseSide { Below, Above, Both };

inline const char *to_string(CollapseSide s) {
    switch (s) {
    case CollapseSide::Below:
        return "below";
    case CollapseSide::Above:
        return "above";
    case CollapseSide::Both:
        return "both";
    }
    return "?";
}

struct CollapsePoint {
    double h = 0.0;
    double value = 0.0;
};

/// depth -> sampled curve m_Z(h)
using CollapseData = std::map<int, std::vector<CollapsePoint>>;

struct CollapseFit {
    double h_c = 1.0;
    double beta = 0.0;
    double nu = 0.0;
    double objective = 0.0;
    double h_min = 0.0;
    double h_max = 0.0;
    std::vector<int> p_list;
    int points = 0;
    bool converged = false;
};

namespace detail {

inline bool on_side(double h, double h_c, CollapseSide side) {
    switch (side) {
    case CollapseSide::Below:
        return h <= h_c;
    case CollapseSide::Above:
        return h >= h_c;
    case CollapseSide::Both:
        return true;
    }
    return true;
}

} // namespace detail

/// Collapse quality of y = m p^{beta/nu} against x = (h - h_c) p^{1/nu}:
/// mean squared vertical distance of every point to a local-linear fit
/// through the points of the other depths within a window of 1.5 times the
/// median in-curve abscissa spacing, divided by the variance of y.
inline double collapse_objective(const CollapseData &data, double h_c, CollapseSide side,
                                 double beta, double nu) {
    struct Pt {
        double x;
        double y;
        int curve;
    };
    std::vector<Pt> pts;
    std::vector<double> spacings;
    int curve = 0;
    for (const auto &[p, pts_p] : data) {
        const double sx = std::pow(static_cast<double>(p), 1.0 / nu);
        const double sy = std::pow(static_cast<double>(p), beta / nu);
        std::vector<double> xs;
        for (const auto &q : pts_p) {
            if (!detail::on_side(q.h, h_c, side)) {
                continue;
            }
            pts.push_back({(q.h - h_c) * sx, q.value * sy, curve});
            xs.push_back((q.h - h_c) * sx);
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 1; i < xs.size(); ++i) {
            spacings.push_back(xs[i] - xs[i - 1]);
        }
        ++curve;
    }
    if (pts.size() < 10 || spacings.empty()) {
        throw PreconditionError("collapse window holds fewer than 10 points");
    }
    std::nth_element(spacings.begin(), spacings.begin() + static_cast<long>(spacings.size() / 2), spacings.end());
    const double bw = 1.5 * spacings[spacings.size() / 2];
    double mean = 0.0;
    for (const auto &q : pts) {
        mean += q.y;
    }
    mean /= static_cast<double>(pts.size());
    double var = 0.0;
    for (const auto &q : pts) {
        var += (q.y - mean) * (q.y - mean);
    }
    var /= static_cast<double>(pts.size());
    double acc = 0.0;
    int used = 0;
    for (const auto &q : pts) {
        double s0 = 0.0;
        double s1 = 0.0;
        double s2 = 0.0;
        double t0 = 0.0;
        double t1 = 0.0;
        int n = 0;
        for (const auto &r : pts) {
            if (r.curve == q.curve || std::abs(r.x - q.x) > bw) {
                continue;
            }
            const double dx = r.x - q.x;
            s0 += 1.0;
            s1 += dx;
            s2 += dx * dx;
            t0 += r.y;
            t1 += dx * r.y;
            ++n;
        }
        if (n < 2) {
            continue;
        }
        const double det = s0 * s2 - s1 * s1;
        const double yhat = det > 1e-14 * s0 * s2 ? (s2 * t0 - s1 * t1) / det : t0 / s0;
        acc += (q.y - yhat) * (q.y - yhat);
        ++used;
    }
    if (used == 0 || var <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return acc / used / var;
}

/// Nelder-Mead over (beta, nu) in [0.05, 0.3] x [0.5, 2], best of a 3 x 3
/// grid of starts.
inline CollapseFit collapse_fit(const CollapseData &data, double h_c = 1.0,
                                CollapseSide side = CollapseSide::Below) {
    require(data.size() >= 3, "collapse needs at least 3 depths");
    CollapseFit fit;
    fit.h_c = h_c;
    fit.h_min = std::numeric_limits<double>::infinity();
    fit.h_max = -std::numeric_limits<double>::infinity();
    for (const auto &[p, pts] : data) {
        fit.p_list.push_back(p);
        for (const auto &q : pts) {
            if (detail::on_side(q.h, h_c, side)) {
                fit.h_min = std::min(fit.h_min, q.h);
                fit.h_max = std::max(fit.h_max, q.h);
                ++fit.points;
            }
        }
    }
    (void)collapse_objective(data, h_c, side, 0.125, 1.0); // validates the window
    const auto obj = [&](const opt::Vector &v) { return collapse_objective(data, h_c, side, v[0], v[1]); };
    opt::Vector lo(2);
    opt::Vector hi(2);
    lo << 0.05, 0.5;
    hi << 0.3, 2.0;
    opt::Vector step(2);
    step << 0.03, 0.15;
    double best = std::numeric_limits<double>::infinity();
    for (double b0 : {0.09, 0.175, 0.26}) {
        for (double n0 : {0.75, 1.25, 1.75}) {
            opt::Vector x0(2);
            x0 << b0, n0;
            opt::NelderMeadOptions o;
            o.x_tolerance = 1e-7;
            const auto r = opt::nelder_mead(obj, x0, step, lo, hi, o);
            if (r.value < best) {
                best = r.value;
                fit.beta = r.x[0];
                fit.nu = r.x[1];
                fit.objective = r.value;
                fit.converged = r.converged;
            }
        }
    }
    return fit;
}

/// As collapse_fit with h_c free in [h_c0 - 0.05, h_c0 + 0.05].
inline CollapseFit collapse_fit_free_hc(const CollapseData &data, double h_c0 = 1.0,
                                        CollapseSide side = CollapseSide::Below) {
    auto fit = collapse_fit(data, h_c0, side);
    const auto obj = [&](const opt::Vector &v) {
        try {
            return collapse_objective(data, v[2], side, v[0], v[1]);
        } catch (const PreconditionError &) {
            return std::numeric_limits<double>::infinity();
        }
    };
    opt::Vector lo(3);
    opt::Vector hi(3);
    lo << 0.05, 0.5, h_c0 - 0.05;
    hi << 0.3, 2.0, h_c0 + 0.05;
    opt::Vector step(3);
    step << 0.03, 0.15, 0.01;
    opt::Vector x0(3);
    x0 << fit.beta, fit.nu, h_c0;
    opt::NelderMeadOptions o;
    o.x_tolerance = 1e-7;
    const auto r = opt::nelder_mead(obj, x0, step, lo, hi, o);
    if (r.value < fit.objective) {
        fit.beta = r.x[0];
        fit.nu = r.x[1];
        fit.h_c = r.x[2];
        fit.objective = r.value;
        fit.converged = r.converged;
    }
    return fit;
}

struct ExactPreparation {
    bool success = false;
    AngleSchedule schedule;     // gates applied as ground_first_sequence(schedule)
    double max_residual = 0.0;  // max_k |f_proj(k)|, k in NS+
    double overlap_product = 0.0; // |phi| from the gate-by-gate product of the canonical embedding
    double overlap_modulus = 0.0; // |phi| from the projected pair amplitudes
    double overlap_oracle = -1.0; // |<GS|psi>| from the dense simulator, -1 if not run
    int starts = 0;
    int L = 0;
    double h = 1.0;
};

/// (ZZ beta_1, X gamma_1, ..., ZZ beta_p, X gamma_p): the ordering for
/// circuits started in |+...+>, on which a leading X layer acts trivially.
inline GateSequence ground_first_sequence(const AngleSchedule &s) {
    std::vector<Gate> gates;
    for (std::size_t j = 0; j < s.gamma.size(); ++j) {
        gates.push_back({GateKind::ZZ, s.beta[j]});
        gates.push_back({GateKind::X, s.gamma[j]});
    }
    return GateSequence(std::move(gates));
}

/// The same circuit as a canonical schedule of depth p + 1 with gamma_1 = 0
/// and beta_{p+1} = 0.
inline AngleSchedule canonical_embedding(const AngleSchedule &s) {
    AngleSchedule c;
    c.gamma.push_back(0.0);
    for (std::size_t j = 0; j < s.gamma.size(); ++j) {
        c.beta.push_back(s.beta[j]);
        c.gamma.push_back(s.gamma[j]);
    }
    c.beta.push_back(0.0);
    return c;
}

namespace detail {

// r_k = f_proj(k) as a bounded pair quantity n conj(d) / (|n|^2 + |d|^2),
// which has the same zeros and equals f_proj to first order near them
inline void preparation_residual(const opt::Vector &x, double h, int L, opt::Vector &r, opt::Matrix &J) {
    const int m = L / 2;
    const auto seq = ground_first_sequence(
        AngleSchedule::from_flat(std::span<const double>(x.data(), static_cast<std::size_t>(x.size()))));
    r.resize(2 * m);
    J.resize(2 * m, x.size());
    for (int i = 0; i < m; ++i) {
        const double k = 2.0 * pi * (i + 0.5) / L;
        const auto tg = evolve_with_grad(seq, InitialState::AllPlus, k);
        const Mobius P = basis_change(h, 0.0, k);
        const auto v = P(tg.trajectory.zero_frame);
        const double S = std::norm(v.num) + std::norm(v.den);
        const cplx val = v.num * std::conj(v.den) / S;
        r[2 * i] = val.real();
        r[2 * i + 1] = val.imag();
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            // gate order is (beta_1, gamma_1, ...), flat order (gamma_1, beta_1, ...)
            const auto dv = P(tg.dpair[static_cast<std::size_t>(j ^ 1)]);
            const double dS = 2.0 * std::real(std::conj(v.num) * dv.num + std::conj(v.den) * dv.den);
            const cplx d = (dv.num * std::conj(v.den) + v.num * std::conj(dv.den)) / S - val * dS / S;
            J(2 * i, j) = d.real();
            J(2 * i + 1, j) = d.imag();
        }
    }
}

} // namespace detail

/// Angles with f_proj(k) = 0 on every NS+ momentum for |+...+> and p = L/2,
/// i.e. exact preparation of the ground state of H(h) on L sites.
inline ExactPreparation solve_exact_preparation(int L, double h = 1.0, std::uint64_t seed = 1,
                                                int max_starts = 200) {
    require(L >= 2 && L % 2 == 0 && L <= 16, "L must be even with 2 <= L <= 16");
    (void)Field{h};
    ExactPreparation out;
    out.L = L;
    out.h = h;
    const int p = L / 2;
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < max_starts; ++s) {
        const auto x0 = detail::random_start(p, seed, s);
        opt::Vector x = Eigen::Map<const opt::Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
        opt::LevenbergMarquardtOptions o;
        o.residual_tolerance = 1e-14;
        o.max_iterations = 300;
        const auto res = opt::levenberg_marquardt(
            [&](const opt::Vector &v, opt::Vector &r, opt::Matrix &J) { detail::preparation_residual(v, h, L, r, J); },
            x, o);
        const std::vector<double> xv(res.x.data(), res.x.data() + res.x.size());
        const auto sched = AngleSchedule::from_flat(xv);
        const auto seq = ground_first_sequence(sched);
        double worst = 0.0;
        for (int i = 0; i < p; ++i) {
            const double k = 2.0 * pi * (i + 0.5) / L;
            const auto f = project(evolve_final(seq, InitialState::AllPlus, k), h, k);
            worst = std::max(worst, f.is_infinite() ? std::numeric_limits<double>::infinity() : std::abs(f.value()));
        }
        out.starts = s + 1;
        if (worst < best) {
            best = worst;
            out.schedule = sched;
            out.max_residual = worst;
        }
        if (worst < 1e-10) {
            out.success = true;
            break;
        }
    }
    const auto seq = ground_first_sequence(out.schedule);
    out.overlap_product = std::abs(overlap(GateSequence::from_schedule(canonical_embedding(out.schedule)), h, L,
                                           InitialState::AllPlus));
    out.overlap_modulus = overlap_modulus(seq, h, L, InitialState::AllPlus);
    if (L <= 14) {
        const auto st = oracle::simulate(L, seq, InitialState::AllPlus);
        const auto gs = oracle::ground_state(L, h);
        out.overlap_oracle = std::abs(oracle::inner(gs.even.state, st));
    }
    return out;
}

struct QuenchPoint {
    double t = 0.0;
    MagnetizationZ m_Z;
};

/// m_Z(t) after a quench h0 -> h, from the Fredholm determinant.
inline std::vector<QuenchPoint> quench_magnetization(double h0, double h, const std::vector<double> &times) {
    require(h0 != 1.0, "quench must start away from the critical point");
    std::vector<QuenchPoint> out;
    for (double t : times) {
        out.push_back({t, quench_magnetization_z(h0, h, t)});
    }
    return out;
}

/// m_Z(t) for the same quench from the dense simulator on L sites, starting
/// from the symmetry-broken ground state (Strang splitting, step dt).
inline std::vector<double> quench_magnetization_oracle(double h0, double h, const std::vector<double> &times,
                                                       int L = 14, double dt = 1e-3) {
    auto st = oracle::symmetry_broken_ground_state(oracle::ground_state(L, h0));
    const auto zz = oracle::zz_diagonal(L);
    std::vector<double> out;
    double now = 0.0;
    for (double t : times) {
        require(t >= now, "times must be non-decreasing");
        oracle::evolve_hamiltonian(st, h, t - now, dt, zz);
        now = t;
        out.push_back(oracle::expectation(st, oracle::Observable::Z));
    }
    return out;
}

struct SweepRow {
    double h = 0.0;
    int p = 0;
    double F = 0.0;
    double residual = 0.0; // F - F_inf
    double m_X = 0.0;
    double m_Z = 0.0;
    double chi_X = 0.0;
    std::uint64_t branch_key = 0;
    double T = 0.0;
    std::string status = "ok";
    AngleSchedule schedule;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::uint64_t seed = 0;
    int nodes = 512;
    int fredholm_nodes = 200;
    int restarts = 16;
    InitialState init = InitialState::AllZero;
};

struct SweepOptions {
    int restarts = 16;
    bool susceptibility = true;
    bool magnetization_z = true;
    double dh = 1e-3;
};

/// For each depth: depth-ladder optimum at the first field, then warm starts
/// along the field grid. Rows sorted by (p, h).
inline SweepTable sweep(std::vector<double> h_grid, std::vector<int> p_list, InitialState init,
                        std::uint64_t seed, const SweepOptions &o = {}) {
    require(!h_grid.empty() && !p_list.empty(), "sweep grids must be non-empty");
    std::sort(h_grid.begin(), h_grid.end());
    std::sort(p_list.begin(), p_list.end());
    SweepTable table;
    table.seed = seed;
    table.restarts = o.restarts;
    table.init = init;
    for (std::size_t pi_ = 0; pi_ < p_list.size(); ++pi_) {
        const int p = p_list[pi_];
        std::optional<AngleSchedule> warm;
        for (std::size_t hi = 0; hi < h_grid.size(); ++hi) {
            const double h = h_grid[hi];
            SweepRow row;
            row.h = h;
            row.p = p;
            try {
                OptimizationResult r;
                if (!warm) {
                    const std::uint64_t cell = seed ^ (0x9E3779B97F4A7C15ULL * (pi_ + 1)) ^ (hi << 32);
                    r = minimize_depth_ladder(h, p, init, cell, o.restarts).back();
                } else {
                    r = minimize_warm(h, p, init, *warm);
                }
                warm = r.schedule;
                const auto seq = GateSequence::from_schedule(r.schedule);
                row.schedule = r.schedule;
                row.F = r.F;
                row.residual = r.F - ground_energy_density_inf(h);
                row.branch_key = r.branch_key;
                row.T = r.T;
                const auto mx = magnetization_x(circuit_source(seq, init));
                row.m_X = mx.value;
                if (!r.converged) {
                    row.status = "not_converged";
                }
                if (!mx.converged && row.status == "ok") {
                    row.status = "mx_not_converged";
                }
                if (o.magnetization_z) {
                    const auto mz = circuit_magnetization_z(seq, init);
                    row.m_Z = mz.value;
                    if (mz.singular && row.status == "ok") {
                        row.status = "mz_singular";
                    } else if (!mz.converged && row.status == "ok") {
                        row.status = "mz_not_converged";
                    }
                }
                if (o.susceptibility && h - o.dh >= 0.0) {
                    const auto chi = susceptibility_x(h, r.schedule, init, o.dh);
                    row.chi_X = chi.chi;
                    if (!chi.converged && row.status == "ok") {
                        row.status = "chi_not_converged";
                    }
                }
            } catch (const std::exception &e) {
                row.status = std::string("error: ") + e.what();
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

} // namespace vqcs
