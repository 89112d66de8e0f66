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
 * Small dense-problem minimizers: BFGS with Armijo backtracking,
 * Nelder-Mead, and Levenberg-Marquardt.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "common.hpp"

namespace vqcs::opt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct BfgsOptions {
    double gradient_tolerance = 1e-10; // on the max-norm
    int max_iterations = 500;
    double armijo = 1e-4;
    double shrink = 0.5;
    int max_backtracks = 60;
};

struct BfgsResult {
    Vector x;
    double value = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history; // accepted objective values
};

/// fg(x, grad) returns f(x) and fills grad.
using ValueAndGradient = std::function<double(const Vector &, Vector &)>;

inline BfgsResult bfgs(const ValueAndGradient &fg, Vector x, const BfgsOptions &o = {}) {
    const auto n = x.size();
    BfgsResult r;
    Vector g(n);
    double f = fg(x, g);
    r.history.push_back(f);
    Matrix H = Matrix::Identity(n, n);
    bool scaled = false;
    Vector g_new(n);
    for (r.iterations = 0; r.iterations < o.max_iterations; ++r.iterations) {
        if (g.lpNorm<Eigen::Infinity>() < o.gradient_tolerance) {
            r.converged = true;
            break;
        }
        Vector d = -H * g;
        double slope = g.dot(d);
        if (!(slope < 0.0)) {
            H.setIdentity();
            d = -g;
            slope = -g.squaredNorm();
        }
        // Armijo backtracking; once the required decrease drops below the
        // resolution of f, a step is taken if it lowers the gradient without
        // raising f.
        const double noise = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f));
        double alpha = 1.0;
        bool accepted = false;
        double f_new = f;
        Vector x_new(n);
        for (int b = 0; b < o.max_backtracks; ++b) {
            x_new = x + alpha * d;
            f_new = fg(x_new, g_new);
            if (std::isfinite(f_new)) {
                if (f_new <= f + o.armijo * alpha * slope) {
                    accepted = true;
                    break;
                }
                if (-o.armijo * alpha * slope < noise && f_new <= f &&
                    g_new.lpNorm<Eigen::Infinity>() < g.lpNorm<Eigen::Infinity>()) {
                    accepted = true;
                    break;
                }
            }
            alpha *= o.shrink;
        }
        if (!accepted) {
            break;
        }
        const Vector s = x_new - x;
        const Vector y = g_new - g;
        x = x_new;
        f = f_new;
        g = g_new;
        r.history.push_back(f);
        const double sy = s.dot(y);
        if (sy > 1e-300 && std::isfinite(sy)) {
            if (!scaled) {
                H *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Vector Hy = H * y;
            const double yHy = y.dot(Hy);
            H += ((1.0 + rho * yHy) * rho) * (s * s.transpose()) -
                 rho * (Hy * s.transpose() + s * Hy.transpose());
        }
    }
    if (!r.converged && g.lpNorm<Eigen::Infinity>() < o.gradient_tolerance) {
        r.converged = true;
    }
    r.x = x;
    r.value = f;
    r.gradient_norm = g.lpNorm<Eigen::Infinity>();
    return r;
}

struct NelderMeadOptions {
    int max_evaluations = 4000;
    double f_tolerance = 1e-12;
    double x_tolerance = 1e-10;
};

struct NelderMeadResult {
    Vector x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead on a box: points outside [lo, hi] evaluate to +inf.
inline NelderMeadResult nelder_mead(const std::function<double(const Vector &)> &f, Vector x0,
                                    const Vector &step, const Vector &lo, const Vector &hi,
                                    const NelderMeadOptions &o = {}) {
    const auto n = x0.size();
    int evals = 0;
    auto eval = [&](const Vector &x) {
        ++evals;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (x[i] < lo[i] || x[i] > hi[i]) {
                return std::numeric_limits<double>::infinity();
            }
        }
        return f(x);
    };
    std::vector<Vector> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    for (Eigen::Index i = 0; i < n; ++i) {
        Vector p = x0;
        p[i] += step[i];
        if (p[i] > hi[i]) {
            p[i] = x0[i] - step[i];
        }
        pts.push_back(p);
    }
    for (const auto &p : pts) {
        vals.push_back(eval(p));
    }
    std::vector<std::size_t> idx(pts.size());
    NelderMeadResult r;
    while (evals < o.max_evaluations) {
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<Vector> sp;
        std::vector<double> sv;
        for (auto i : idx) {
            sp.push_back(pts[i]);
            sv.push_back(vals[i]);
        }
        pts = sp;
        vals = sv;
        double size = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            size = std::max(size, (pts[i] - pts[0]).lpNorm<Eigen::Infinity>());
        }
        if (std::isfinite(vals.back()) && vals.back() - vals.front() <= o.f_tolerance * (1.0 + std::abs(vals.front())) &&
            size < o.x_tolerance * 1e4) {
            r.converged = true;
            break;
        }
        if (size < o.x_tolerance) {
            r.converged = true;
            break;
        }
        Vector c = Vector::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            c += pts[static_cast<std::size_t>(i)];
        }
        c /= static_cast<double>(n);
        const Vector &worst = pts.back();
        const Vector xr = c + (c - worst);
        const double fr = eval(xr);
        if (fr < vals.front()) {
            const Vector xe = c + 2.0 * (c - worst);
            const double fe = eval(xe);
            if (fe < fr) {
                pts.back() = xe;
                vals.back() = fe;
            } else {
                pts.back() = xr;
                vals.back() = fr;
            }
            continue;
        }
        if (fr < vals[vals.size() - 2]) {
            pts.back() = xr;
            vals.back() = fr;
            continue;
        }
        const bool outside = fr < vals.back();
        const Vector xc = outside ? Vector(c + 0.5 * (xr - c)) : Vector(c + 0.5 * (worst - c));
        const double fc = eval(xc);
        if (fc < (outside ? fr : vals.back())) {
            pts.back() = xc;
            vals.back() = fc;
            continue;
        }
        for (std::size_t i = 1; i < pts.size(); ++i) {
            pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
            vals[i] = eval(pts[i]);
        }
    }
    const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
    r.x = pts[static_cast<std::size_t>(best)];
    r.value = vals[static_cast<std::size_t>(best)];
    r.evaluations = evals;
    return r;
}

struct LevenbergMarquardtOptions {
    int max_iterations = 200;
    double residual_tolerance = 1e-13;
    double step_tolerance = 1e-15;
    double lambda0 = 1e-3;
};

struct LevenbergMarquardtResult {
    Vector x;
    double max_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Residual function fills r (size m) and the m x n Jacobian.
using ResidualAndJacobian = std::function<void(const Vector &, Vector &, Matrix &)>;

inline LevenbergMarquardtResult levenberg_marquardt(const ResidualAndJacobian &fn, Vector x,
                                                    const LevenbergMarquardtOptions &o = {}) {
    Vector r;
    Matrix J;
    fn(x, r, J);
    double cost = r.squaredNorm();
    double lambda = o.lambda0;
    LevenbergMarquardtResult out;
    for (out.iterations = 0; out.iterations < o.max_iterations; ++out.iterations) {
        if (r.lpNorm<Eigen::Infinity>() < o.residual_tolerance) {
            out.converged = true;
            break;
        }
        const Matrix A = J.transpose() * J;
        const Vector g = J.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Matrix M = A;
            M.diagonal() += lambda * (A.diagonal().array() + 1e-12).matrix();
            const Vector dx = -M.ldlt().solve(g);
            const Vector xn = x + dx;
            Vector rn;
            Matrix Jn;
            fn(xn, rn, Jn);
            const double cn = rn.squaredNorm();
            if (std::isfinite(cn) && cn < cost) {
                x = xn;
                r = rn;
                J = Jn;
                cost = cn;
                lambda = std::max(lambda / 3.0, 1e-15);
                improved = true;
                if (dx.lpNorm<Eigen::Infinity>() < o.step_tolerance) {
                    tries = 30;
                }
                break;
            }
            lambda *= 4.0;
        }
        if (!improved) {
            break;
        }
    }
    out.x = x;
    out.max_residual = r.lpNorm<Eigen::Infinity>();
    out.converged = out.converged || out.max_residual < o.residual_tolerance;
    return out;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
inline LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
    require(x.size() == y.size() && x.size() >= 2, "linear_fit needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0.0, "linear_fit: abscissae are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.slope * x[i] - f.intercept;
        ss += e * e;
    }
    f.r2 = syy > 0.0 ? 1.0 - ss / syy : 1.0;
    return f;
}

} // namespace vqcs::opt
