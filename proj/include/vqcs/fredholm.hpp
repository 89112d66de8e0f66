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
 * Z magnetization of the infinite chain as the Fredholm determinant
 * det(Id - J) on [0, pi], with J built from principal-value integrals of
 * f_{2p}, plus the exact finite-chain expression used to fix its sign.
 */
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <vector>

#include "circuit.hpp"
#include "coherent.hpp"
#include "common.hpp"
#include "observables.hpp"
#include "quadrature.hpp"

namespace vqcs {

/// PV int_0^pi F(k) sin k / (cos lambda - cos k) dk by subtracting F(lambda):
/// the remainder is regular and the subtracted piece has the exact value
/// F(lambda) ln((1 + cos lambda) / (1 - cos lambda)).
template <class Fn>
auto pv_integral(Fn &&F, double lambda, const QuadratureRule &rule) {
    if (lambda < 1e-12 || lambda > pi - 1e-12) {
        throw PreconditionError("pv_integral: pole too close to an endpoint");
    }
    using value_type = decltype(F(lambda));
    const value_type f0 = F(lambda);
    const double cl = std::cos(lambda);
    value_type acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double k = rule.nodes[i];
        const double gap = cl - std::cos(k);
        if (std::abs(k - lambda) < 1e-12) {
            continue; // removable point, zero-measure
        }
        acc += rule.weights[i] * (F(k) - f0) * (std::sin(k) / gap);
    }
    return acc + f0 * std::log((1.0 + cl) / (1.0 - cl));
}

inline double pv_integral(double (*F)(double), double lambda, int nodes = 200) {
    return pv_integral(F, lambda, gauss_legendre(nodes, 0.0, pi));
}

/// f on (0, pi) as a sine series sum_n b_n sin(n k). For an odd 2 pi-periodic
/// analytic f the coefficients decay geometrically, and
/// PV int_0^pi f(k) sin k / (cos x - cos k) dk = pi sum_n b_n cos(n x).
struct SineSeries {
    std::vector<cplx> b; // b[n], n >= 1; b[0] unused
    bool converged = false;
    double endpoint_value = 0.0; // max(|f(0)|, |f(pi)|)
    double max_abs = 0.0;        // max |f| on the sampling grid

    [[nodiscard]] cplx pv(double x) const {
        cplx acc{0.0, 0.0};
        for (std::size_t n = 1; n < b.size(); ++n) {
            acc += b[n] * std::cos(static_cast<double>(n) * x);
        }
        return pi * acc;
    }
    [[nodiscard]] cplx pv_derivative(double x) const {
        cplx acc{0.0, 0.0};
        for (std::size_t n = 1; n < b.size(); ++n) {
            const double dn = static_cast<double>(n);
            acc -= dn * b[n] * std::sin(dn * x);
        }
        return pi * acc;
    }
};

/// Sine coefficients from equispaced samples k_m = pi m / N, doubling N from
/// `start` until the upper quarter of the spectrum is below 1e-14 relative.
template <class Fn> SineSeries sine_series(Fn &&f, int start = 512, int max_size = 1 << 17) {
    SineSeries out;
    Eigen::FFT<double> fft;
    for (int N = start; N <= max_size; N *= 2) {
        std::vector<cplx> x(static_cast<std::size_t>(2 * N), cplx{0.0, 0.0});
        double big = 0.0;
        for (int m = 1; m < N; ++m) {
            const cplx v = f(pi * m / N);
            x[static_cast<std::size_t>(m)] = v;
            x[static_cast<std::size_t>(2 * N - m)] = -v;
            big = std::max(big, std::abs(v));
        }
        std::vector<cplx> X;
        fft.fwd(X, x);
        out.b.assign(static_cast<std::size_t>(N), cplx{0.0, 0.0});
        double head = 0.0;
        double tail = 0.0;
        for (int n = 1; n < N; ++n) {
            const cplx bn = I * X[static_cast<std::size_t>(n)] / static_cast<double>(N);
            out.b[static_cast<std::size_t>(n)] = bn;
            if (n < 3 * N / 4) {
                head = std::max(head, std::abs(bn));
            } else {
                tail = std::max(tail, std::abs(bn));
            }
        }
        out.max_abs = big;
        if (tail <= 1e-14 * std::max(head, big) || big == 0.0) {
            out.converged = true;
            break;
        }
    }
    // drop negligible high modes
    double top = 0.0;
    for (const auto &v : out.b) {
        top = std::max(top, std::abs(v));
    }
    std::size_t last = out.b.size();
    while (last > 1 && std::abs(out.b[last - 1]) <= 1e-18 * top) {
        --last;
    }
    out.b.resize(std::max<std::size_t>(last, 2));
    out.endpoint_value = std::max(std::abs(f(0.0)), std::abs(f(pi)));
    return out;
}

/// J(lambda, mu) = (2 / pi) (rho(lambda) sin lambda / f(lambda))
///                 [PV(lambda) - PV(mu)] / (cos lambda - cos mu),
/// rho = (1 / 2 pi) |f|^2 / (1 + |f|^2).
class KernelJ {
  public:
    static constexpr double singular_threshold = 1e6;

    explicit KernelJ(AmplitudeSource f) : f_(std::move(f)) {
        series_ = sine_series([this](double k) { return value_at(k); });
        singular_ = series_.max_abs > singular_threshold || !std::isfinite(series_.max_abs);
    }

    /// rho(lambda) / f(lambda), finite at zeros and poles of f.
    [[nodiscard]] cplx rho_over_f(double lambda) const {
        const auto a = f_(lambda);
        const double s = std::norm(a.num) + std::norm(a.den);
        return std::conj(a.num) * a.den / (2.0 * pi * s);
    }

    [[nodiscard]] cplx operator()(double lambda, double mu) const {
        const cplx pref = (2.0 / pi) * rho_over_f(lambda) * std::sin(lambda);
        if (std::abs(lambda - mu) < 1e-9) {
            return pref * (-series_.pv_derivative(lambda) / std::sin(lambda));
        }
        return pref * (series_.pv(lambda) - series_.pv(mu)) / (std::cos(lambda) - std::cos(mu));
    }

    /// Kernel on all pairs of `nodes`, with the PV values shared.
    [[nodiscard]] Eigen::MatrixXcd matrix(const std::vector<double> &nodes) const {
        const auto n = static_cast<Eigen::Index>(nodes.size());
        std::vector<cplx> pv(nodes.size());
        std::vector<cplx> pref(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            pv[i] = series_.pv(nodes[i]);
            pref[i] = (2.0 / pi) * rho_over_f(nodes[i]) * std::sin(nodes[i]);
        }
        Eigen::MatrixXcd J(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double li = nodes[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) {
                const double lj = nodes[static_cast<std::size_t>(j)];
                if (std::abs(li - lj) < 1e-9) {
                    J(i, j) = pref[static_cast<std::size_t>(i)] *
                              (-series_.pv_derivative(li) / std::sin(li));
                } else {
                    J(i, j) = pref[static_cast<std::size_t>(i)] *
                              (pv[static_cast<std::size_t>(i)] - pv[static_cast<std::size_t>(j)]) /
                              (std::cos(li) - std::cos(lj));
                }
            }
        }
        return J;
    }

    [[nodiscard]] bool singular() const { return singular_; }
    [[nodiscard]] bool series_converged() const { return series_.converged; }
    [[nodiscard]] const SineSeries &series() const { return series_; }

  private:
    [[nodiscard]] cplx value_at(double k) const {
        const auto a = f_(k);
        if (a.den == cplx{0.0, 0.0}) {
            return {std::numeric_limits<double>::infinity(), 0.0};
        }
        return a.num / a.den;
    }

    AmplitudeSource f_;
    SineSeries series_;
    bool singular_ = false;
};

inline cplx kernel_j(const AmplitudeSource &f, double lambda, double mu) {
    require(lambda > 0.0 && lambda < pi && mu > 0.0 && mu < pi, "kernel arguments must lie in (0, pi)");
    return KernelJ(f)(lambda, mu);
}

struct FredholmResult {
    cplx value{1.0, 0.0};
    int nodes = 0;
    bool converged = false;
};

template <class K>
concept MatrixKernel = requires(const K &k, const std::vector<double> &x) {
    { k.matrix(x) } -> std::convertible_to<Eigen::MatrixXcd>;
};

/// det(Id - J) on n Gauss-Legendre nodes.
template <class K> cplx nystrom_det(const K &kernel, int n) {
    const auto rule = gauss_legendre(n, 0.0, pi);
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd J(N, N);
    if constexpr (MatrixKernel<K>) {
        J = kernel.matrix(rule.nodes);
    } else {
        for (Eigen::Index i = 0; i < N; ++i) {
            for (Eigen::Index j = 0; j < N; ++j) {
                J(i, j) = kernel(rule.nodes[static_cast<std::size_t>(i)],
                                 rule.nodes[static_cast<std::size_t>(j)]);
            }
        }
    }
    Eigen::MatrixXcd M = -J;
    for (Eigen::Index j = 0; j < N; ++j) {
        M.col(j) *= rule.weights[static_cast<std::size_t>(j)];
    }
    M.diagonal().array() += 1.0;
    return M.partialPivLu().determinant();
}

/// Nystrom determinant, doubling n from `start` until the change is < tol.
template <class K>
FredholmResult fredholm_det(const K &kernel, int start = 200, double tol = 1e-8,
                            int max_nodes = 1600) {
    require(start >= 2 && max_nodes >= start, "invalid node range");
    FredholmResult out;
    cplx prev = nystrom_det(kernel, start);
    out.value = prev;
    out.nodes = start;
    for (int n = 2 * start; n <= max_nodes; n *= 2) {
        const cplx cur = nystrom_det(kernel, n);
        out.value = cur;
        out.nodes = n;
        if (std::abs(cur - prev) < tol) {
            out.converged = true;
            return out;
        }
        prev = cur;
    }
    return out;
}

struct MagnetizationZ {
    double value = 0.0;
    double imag = 0.0;      // imaginary part of the determinant (roundoff)
    int nodes = 0;
    bool converged = false; // Nystrom doubling and sine-series tail both converged
    bool singular = false;
    bool sign_known = true;
    double finite_size = 0.0; // exact finite-chain value when available
    bool has_finite_size = false;
};

/// det(Id - J) for an amplitude source.
inline MagnetizationZ magnetization_z(const AmplitudeSource &f, int start = 200) {
    const KernelJ J(f);
    MagnetizationZ out;
    out.singular = J.singular();
    const auto det = fredholm_det(J, start);
    out.value = det.value.real();
    out.imag = det.value.imag();
    out.nodes = det.nodes;
    out.converged = det.converged && J.series_converged();
    return out;
}

/// Exact <Z_j> of the canonical circuit state from |0...0> on an L-site ring,
/// Re[e^{2 i sum gamma} A^NS conj(A^R) det(1 + diag(conj f(q)) B)], q in R+.
inline double finite_size_magnetization_z(const GateSequence &seq, InitialState init, int L) {
    require(L >= 4 && L % 2 == 0, "L must be even and >= 4");
    require(seq.is_canonical(), "finite-size m_Z requires an alternating X/ZZ circuit");
    if (init == InitialState::AllPlus) {
        return 0.0;
    }
    const int m = L / 2 - 1;
    std::vector<double> q(static_cast<std::size_t>(m));
    std::vector<cplx> fq(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        q[static_cast<std::size_t>(i)] = 2.0 * pi * (i + 1) / L;
        fq[static_cast<std::size_t>(i)] = evolve_final(seq, init, q[static_cast<std::size_t>(i)]).value();
    }
    std::vector<double> k(static_cast<std::size_t>(L / 2));
    std::vector<cplx> fk(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] = 2.0 * pi * (static_cast<double>(i) + 0.5) / L;
        fk[i] = evolve_final(seq, init, k[i]).value() * std::sin(k[i]);
    }
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(m, m);
    const double scale = 4.0 / (static_cast<double>(L) * L);
    for (int i = 0; i < m; ++i) {
        const double cq = std::cos(q[static_cast<std::size_t>(i)]);
        for (int j = 0; j < m; ++j) {
            const double cqj = std::cos(q[static_cast<std::size_t>(j)]);
            cplx acc{0.0, 0.0};
            for (std::size_t a = 0; a < k.size(); ++a) {
                const double ck = std::cos(k[a]);
                acc += fk[a] / ((cq - ck) * (cqj - ck));
            }
            M(i, j) += std::conj(fq[static_cast<std::size_t>(i)]) * scale *
                       std::sin(q[static_cast<std::size_t>(i)]) * acc;
        }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    cplx logdet{0.0, 0.0};
    const auto &U = lu.matrixLU();
    for (int i = 0; i < m; ++i) {
        logdet += std::log(U(i, i));
    }
    if (lu.permutationP().determinant() < 0) {
        logdet += cplx{0.0, pi};
    }
    const cplx log_ns = detail::log_sector_amplitude(seq, L, init, Sector::NS);
    const cplx log_r = detail::log_sector_amplitude(seq, L, init, Sector::R);
    const cplx total = cplx{0.0, 2.0 * seq.x_angle_sum()} + log_ns + std::conj(log_r) + logdet;
    return std::exp(total).real();
}

/// Chain length at which the finite-size expression equals the infinite chain.
inline int light_cone_size(int p) { return 4 * p + 4; }

/// m_Z of the circuit state in the infinite chain: magnitude from the
/// Fredholm determinant, sign from the exact finite-chain expression on a
/// ring beyond the light cone. Circuits with YY gates get no sign.
inline MagnetizationZ circuit_magnetization_z(const GateSequence &seq, InitialState init,
                                              int start = 200) {
    MagnetizationZ out;
    if (init == InitialState::AllPlus) {
        out.converged = true;
        out.has_finite_size = true;
        return out;
    }
    out = magnetization_z(circuit_source(seq, init), start);
    if (seq.is_canonical()) {
        out.finite_size = finite_size_magnetization_z(seq, init, light_cone_size(seq.depth()));
        out.has_finite_size = true;
        out.value = std::copysign(std::abs(out.value), out.finite_size);
    } else if (seq.has_yy()) {
        out.sign_known = false;
        out.value = std::abs(out.value);
    }
    return out;
}

/// m_Z(t) after a quench h0 -> h from the ground state of H(h0).
inline MagnetizationZ quench_magnetization_z(double h0, double h, double t, int start = 200) {
    require(t >= 0.0, "quench time must be non-negative");
    (void)Field{h0};
    (void)Field{h};
    return magnetization_z([h0, h, t](double k) { return quench_amplitude(h0, h, t, k); }, start);
}

} // namespace vqcs
