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
 * Dense statevector simulator and exact eigensolver for small chains.
 *
 * Bit q of a basis index is the Z eigenvalue of site q (0 -> +1, 1 -> -1).
 * The chain is periodic.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "circuit.hpp"
#include "common.hpp"

namespace vqcs::oracle {

inline constexpr int max_sites = 20;
inline constexpr int max_eigen_sites = 16;

struct DenseState {
    int L = 0;
    std::vector<cplx> amp;

    [[nodiscard]] std::size_t dim() const { return amp.size(); }
    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amp) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }
};

inline DenseState initial_state(int L, InitialState init) {
    require(L >= 1 && L <= max_sites, "oracle supports 1 <= L <= 20");
    DenseState st;
    st.L = L;
    const std::size_t n = std::size_t{1} << L;
    if (init == InitialState::AllZero) {
        st.amp.assign(n, cplx{0.0, 0.0});
        st.amp[0] = 1.0;
    } else {
        st.amp.assign(n, cplx{std::pow(2.0, -0.5 * L), 0.0});
    }
    return st;
}

/// sum_q z_q z_{q+1} for every basis state, periodic.
inline std::vector<double> zz_diagonal(int L) {
    const std::size_t n = std::size_t{1} << L;
    std::vector<double> d(n);
    for (std::size_t b = 0; b < n; ++b) {
        int s = 0;
        for (int q = 0; q < L; ++q) {
            const int nq = (q + 1) % L;
            s += ((b >> q) & 1U) == ((b >> nq) & 1U) ? 1 : -1;
        }
        d[b] = s;
    }
    return d;
}

/// exp(i t sum_q X_q).
inline void apply_x(DenseState &st, double t) {
    const cplx c{std::cos(t), 0.0};
    const cplx s{0.0, std::sin(t)};
    for (int q = 0; q < st.L; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t b = 0; b < st.dim(); ++b) {
            if ((b & bit) == 0) {
                const cplx a0 = st.amp[b];
                const cplx a1 = st.amp[b | bit];
                st.amp[b] = c * a0 + s * a1;
                st.amp[b | bit] = s * a0 + c * a1;
            }
        }
    }
}

/// exp(i t sum_q Z_q Z_{q+1}) using precomputed diagonal energies.
inline void apply_zz(DenseState &st, double t, const std::vector<double> &zz) {
    for (std::size_t b = 0; b < st.dim(); ++b) {
        st.amp[b] *= std::exp(cplx{0.0, t * zz[b]});
    }
}

/// exp(i t sum_q Y_q Y_{q+1}); the bond terms commute.
inline void apply_yy(DenseState &st, double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    for (int q = 0; q < st.L; ++q) {
        const int nq = (q + 1) % st.L;
        const std::size_t mask = (std::size_t{1} << q) | (std::size_t{1} << nq);
        for (std::size_t b = 0; b < st.dim(); ++b) {
            const std::size_t f = b ^ mask;
            if (b < f) {
                // Y Y |b> = -(-1)^{b_q + b_nq} |b ^ mask>
                const double sb = (((b >> q) ^ (b >> nq)) & 1U) != 0 ? 1.0 : -1.0;
                const double sf = (((f >> q) ^ (f >> nq)) & 1U) != 0 ? 1.0 : -1.0;
                const cplx a = st.amp[b];
                const cplx af = st.amp[f];
                st.amp[b] = c * a + cplx{0.0, s * sf} * af;
                st.amp[f] = c * af + cplx{0.0, s * sb} * a;
            }
        }
    }
}

inline DenseState simulate(int L, const GateSequence &seq, InitialState init) {
    DenseState st = initial_state(L, init);
    const auto zz = zz_diagonal(L);
    for (const auto &g : seq.gates()) {
        switch (g.kind) {
        case GateKind::X:
            apply_x(st, g.angle);
            break;
        case GateKind::ZZ:
            apply_zz(st, g.angle, zz);
            break;
        case GateKind::YY:
            apply_yy(st, g.angle);
            break;
        }
    }
    return st;
}

/// H(h) |psi> for H = -sum Z Z - h sum X.
inline std::vector<cplx> apply_hamiltonian(const DenseState &st, double h,
                                           const std::vector<double> &zz) {
    std::vector<cplx> out(st.dim());
    for (std::size_t b = 0; b < st.dim(); ++b) {
        out[b] = -zz[b] * st.amp[b];
    }
    for (int q = 0; q < st.L; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t b = 0; b < st.dim(); ++b) {
            out[b] -= h * st.amp[b ^ bit];
        }
    }
    return out;
}

enum class Observable { Energy, Z, X, XX };

struct SiteAverage {
    double mean = 0.0;
    double spread = 0.0; // max deviation of a single site from the mean
};

namespace detail {

inline double z_site(const DenseState &st, int q) {
    double s = 0.0;
    for (std::size_t b = 0; b < st.dim(); ++b) {
        s += (((b >> q) & 1U) != 0 ? -1.0 : 1.0) * std::norm(st.amp[b]);
    }
    return s;
}

inline double x_string(const DenseState &st, std::size_t mask) {
    double s = 0.0;
    for (std::size_t b = 0; b < st.dim(); ++b) {
        s += std::real(std::conj(st.amp[b]) * st.amp[b ^ mask]);
    }
    return s;
}

inline SiteAverage average(const std::vector<double> &v) {
    SiteAverage a;
    for (double x : v) {
        a.mean += x;
    }
    a.mean /= static_cast<double>(v.size());
    for (double x : v) {
        a.spread = std::max(a.spread, std::abs(x - a.mean));
    }
    return a;
}

} // namespace detail

/// Site-averaged <Z_j>, <X_j>, or connected <X_j X_{j+l}> - <X>^2.
inline SiteAverage site_expectation(const DenseState &st, Observable obs, int ell = 1) {
    std::vector<double> v(static_cast<std::size_t>(st.L));
    for (int q = 0; q < st.L; ++q) {
        switch (obs) {
        case Observable::Z:
            v[q] = detail::z_site(st, q);
            break;
        case Observable::X:
            v[q] = detail::x_string(st, std::size_t{1} << q);
            break;
        case Observable::XX: {
            require(ell >= 1, "separation must be >= 1");
            const int r = (q + ell) % st.L;
            const double xq = detail::x_string(st, std::size_t{1} << q);
            const double xr = detail::x_string(st, std::size_t{1} << r);
            v[q] = detail::x_string(st, (std::size_t{1} << q) ^ (std::size_t{1} << r)) - xq * xr;
            break;
        }
        case Observable::Energy:
            throw PreconditionError("use energy() for the Hamiltonian");
        }
    }
    return detail::average(v);
}

/// <psi| H(h) |psi> (total, not per site).
inline double energy(const DenseState &st, double h) {
    const auto zz = zz_diagonal(st.L);
    const auto hv = apply_hamiltonian(st, h, zz);
    double s = 0.0;
    for (std::size_t b = 0; b < st.dim(); ++b) {
        s += std::real(std::conj(st.amp[b]) * hv[b]);
    }
    return s;
}

inline double expectation(const DenseState &st, Observable obs, double h = 0.0, int ell = 1) {
    if (obs == Observable::Energy) {
        return energy(st, h);
    }
    return site_expectation(st, obs, ell).mean;
}

inline cplx inner(const DenseState &a, const DenseState &b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a.amp[i]) * b.amp[i];
    }
    return s;
}

struct GroundState {
    double energy = 0.0;
    DenseState state;
};

/// Lowest eigenpair of H(h) within the sector of fixed X parity
/// prod_q X_q = parity (+1 or -1).
inline GroundState sector_ground_state(int L, double h, int parity) {
    require(L >= 2 && L <= max_eigen_sites, "eigensolver supports 2 <= L <= 16");
    require(parity == 1 || parity == -1, "parity must be +1 or -1");
    const std::size_t n = std::size_t{1} << L;
    const std::size_t all = n - 1;
    const auto zz = zz_diagonal(L);
    // sector basis: representatives b < b ^ all, vectors (|b> + parity |b^all>) / sqrt 2
    std::vector<std::size_t> reps;
    std::vector<std::size_t> index(n);
    for (std::size_t b = 0; b < n; ++b) {
        if (b < (b ^ all)) {
            index[b] = reps.size();
            index[b ^ all] = reps.size();
            reps.push_back(b);
        }
    }
    const std::size_t m = reps.size();
    // H restricted: diagonal -zz[b]; X_q maps rep b to b^bit, which is rep r or r^all
    auto apply = [&](const Eigen::VectorXd &x) {
        Eigen::VectorXd y(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t b = reps[i];
            double acc = -zz[b] * x[static_cast<Eigen::Index>(i)];
            for (int q = 0; q < L; ++q) {
                const std::size_t c = b ^ (std::size_t{1} << q);
                const std::size_t j = index[c];
                const double sign = c == reps[j] ? 1.0 : static_cast<double>(parity);
                acc -= h * sign * x[static_cast<Eigen::Index>(j)];
            }
            y[static_cast<Eigen::Index>(i)] = acc;
        }
        return y;
    };
    Eigen::VectorXd vec;
    double e0 = 0.0;
    if (m <= 1024) {
        Eigen::MatrixXd H(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            unit[static_cast<Eigen::Index>(i)] = 1.0;
            H.col(static_cast<Eigen::Index>(i)) = apply(unit);
            unit[static_cast<Eigen::Index>(i)] = 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        e0 = es.eigenvalues()[0];
        vec = es.eigenvectors().col(0);
    } else {
        // Lanczos with full reorthogonalization
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> nd;
        Eigen::VectorXd v(static_cast<Eigen::Index>(m));
        for (auto &x : v) {
            x = nd(rng);
        }
        v.normalize();
        std::vector<Eigen::VectorXd> basis;
        std::vector<double> alpha;
        std::vector<double> beta;
        Eigen::VectorXd ritz;
        const int max_iter = 400;
        for (int it = 0; it < max_iter; ++it) {
            basis.push_back(v);
            Eigen::VectorXd w = apply(v);
            const double a = v.dot(w);
            alpha.push_back(a);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &u : basis) {
                    w -= u.dot(w) * u;
                }
            }
            const double b = w.norm();
            const auto k = static_cast<Eigen::Index>(alpha.size());
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
            for (Eigen::Index i = 0; i < k; ++i) {
                T(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < k) {
                    T(i, i + 1) = beta[static_cast<std::size_t>(i)];
                    T(i + 1, i) = beta[static_cast<std::size_t>(i)];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            const double cur = es.eigenvalues()[0];
            ritz = es.eigenvectors().col(0);
            const double resid = std::abs(b * ritz[k - 1]);
            // the energy settles long before the vector; stop on the residual
            e0 = cur;
            if (resid < 1e-13 || b < 1e-14) {
                break;
            }
            beta.push_back(b);
            v = w / b;
        }
        vec = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (Eigen::Index i = 0; i < ritz.size(); ++i) {
            vec += ritz[i] * basis[static_cast<std::size_t>(i)];
        }
        vec.normalize();
    }
    GroundState gs;
    gs.energy = e0;
    gs.state.L = L;
    gs.state.amp.assign(n, cplx{0.0, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = vec[static_cast<Eigen::Index>(i)] * r;
        gs.state.amp[reps[i]] = x;
        gs.state.amp[reps[i] ^ all] = parity * x;
    }
    return gs;
}

struct GroundStatePair {
    GroundState even;  // NS: prod X = +1
    GroundState odd;   // R: prod X = -1, phase fixed by <odd|Z_0|even> > 0
    GroundState lowest;
};

inline GroundStatePair ground_state(int L, double h) {
    GroundStatePair out;
    out.even = sector_ground_state(L, h, 1);
    out.odd = sector_ground_state(L, h, -1);
    double zc = 0.0;
    for (std::size_t b = 0; b < out.even.state.dim(); ++b) {
        zc += ((b & 1U) != 0 ? -1.0 : 1.0) *
              std::real(std::conj(out.odd.state.amp[b]) * out.even.state.amp[b]);
    }
    if (zc < 0.0) {
        for (auto &a : out.odd.state.amp) {
            a = -a;
        }
    }
    out.lowest = out.even.energy <= out.odd.energy ? out.even : out.odd;
    return out;
}

/// (|even> + |odd>) / sqrt 2 with positive <Z>.
inline DenseState symmetry_broken_ground_state(const GroundStatePair &gs) {
    DenseState st = gs.even.state;
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t b = 0; b < st.dim(); ++b) {
        st.amp[b] = r * (gs.even.state.amp[b] + gs.odd.state.amp[b]);
    }
    return st;
}

/// exp(-i t H(h)) by symmetric splitting with exactly exponentiated X and ZZ parts.
inline void evolve_hamiltonian(DenseState &st, double h, double t, double dt,
                               const std::vector<double> &zz) {
    require(dt > 0.0 && t >= 0.0, "time step must be positive and time non-negative");
    const auto steps = static_cast<long>(std::ceil(t / dt - 1e-9));
    if (steps == 0) {
        return;
    }
    const double tau = t / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        apply_x(st, 0.5 * h * tau);
        apply_zz(st, tau, zz);
        apply_x(st, 0.5 * h * tau);
    }
}

} // namespace vqcs::oracle
