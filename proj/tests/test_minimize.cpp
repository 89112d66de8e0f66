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

#include "vqcs/minimize.hpp"

namespace {

using namespace vqcs;
using opt::Vector;

TEST(Bfgs, Rosenbrock) {
    const auto fg = [](const Vector &x, Vector &g) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        g.resize(2);
        g[0] = -2.0 * a - 400.0 * x[0] * b;
        g[1] = 200.0 * b;
        return a * a + 100.0 * b * b;
    };
    Vector x0(2);
    x0 << -1.2, 1.0;
    const auto r = opt::bfgs(fg, x0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.0, 1e-8);
    EXPECT_NEAR(r.x[1], 1.0, 1e-8);
}

TEST(Bfgs, HistoryIsMonotone) {
    const auto fg = [](const Vector &x, Vector &g) {
        g = 2.0 * x;
        g[1] *= 10.0;
        return x[0] * x[0] + 10.0 * x[1] * x[1];
    };
    Vector x0(2);
    x0 << 3.0, -2.0;
    const auto r = opt::bfgs(fg, x0);
    for (std::size_t i = 1; i < r.history.size(); ++i) {
        EXPECT_LE(r.history[i], r.history[i - 1]);
    }
}

TEST(NelderMead, BoxConstrainedQuadratic) {
    const auto f = [](const Vector &x) { return (x[0] - 0.3) * (x[0] - 0.3) + (x[1] - 5.0) * (x[1] - 5.0); };
    Vector x0(2);
    x0 << 0.5, 0.5;
    Vector step(2);
    step << 0.1, 0.1;
    Vector lo(2);
    lo << 0.0, 0.0;
    Vector hi(2);
    hi << 1.0, 2.0;
    const auto r = opt::nelder_mead(f, x0, step, lo, hi);
    EXPECT_NEAR(r.x[0], 0.3, 1e-5);
    EXPECT_NEAR(r.x[1], 2.0, 1e-5);
}

TEST(LevenbergMarquardt, SolvesNonlinearSystem) {
    // x^2 + y^2 = 4, x y = 1
    const auto fn = [](const Vector &x, Vector &r, opt::Matrix &J) {
        r.resize(2);
        J.resize(2, 2);
        r << x[0] * x[0] + x[1] * x[1] - 4.0, x[0] * x[1] - 1.0;
        J << 2 * x[0], 2 * x[1], x[1], x[0];
    };
    Vector x0(2);
    x0 << 2.0, 0.3;
    const auto r = opt::levenberg_marquardt(fn, x0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0] * r.x[1], 1.0, 1e-12);
    EXPECT_NEAR(r.x[0] * r.x[0] + r.x[1] * r.x[1], 4.0, 1e-12);
}

TEST(LinearFit, ExactLine) {
    const auto f = opt::linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r2, 1.0, 1e-14);
    EXPECT_THROW(opt::linear_fit({1}, {1}), PreconditionError);
}

} // namespace
