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
 * Amplitudes f = num / den kept in homogeneous coordinates so that poles
 * (den = 0) are ordinary values, and the 2x2 Moebius maps acting on them.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "common.hpp"

namespace vqcs {

struct ProjectiveAmplitude {
    cplx num{0.0, 0.0};
    cplx den{1.0, 0.0};

    static ProjectiveAmplitude finite(cplx value) { return {value, 1.0}; }
    static ProjectiveAmplitude infinity() { return {1.0, 0.0}; }

    [[nodiscard]] bool is_infinite() const { return den == cplx{0.0, 0.0}; }

    /// num / den; +inf (complex) at a pole.
    [[nodiscard]] cplx value() const {
        if (is_infinite()) {
            return {std::numeric_limits<double>::infinity(), 0.0};
        }
        return num / den;
    }

    /// |f|^2 / (1 + |f|^2), finite everywhere.
    [[nodiscard]] double weight() const {
        const double a = std::norm(num);
        const double b = std::norm(den);
        return a / (a + b);
    }

    /// Same point with max(|num|, |den|) = 1.
    [[nodiscard]] ProjectiveAmplitude normalized() const {
        const double s = std::max(std::abs(num), std::abs(den));
        if (s == 0.0 || !std::isfinite(s)) {
            return *this;
        }
        return {num / s, den / s};
    }
};

/// (num, den) -> (a num + b den, c num + d den).
struct Mobius {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    [[nodiscard]] ProjectiveAmplitude operator()(const ProjectiveAmplitude &v) const {
        return {a * v.num + b * v.den, c * v.num + d * v.den};
    }

    /// Composition: (*this) after `inner`.
    [[nodiscard]] Mobius operator*(const Mobius &inner) const {
        return {a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                c * inner.a + d * inner.c, c * inner.b + d * inner.d};
    }

    /// Row-vector action r^T M, used for reverse-mode accumulation.
    [[nodiscard]] std::array<cplx, 2> left(const std::array<cplx, 2> &r) const {
        return {r[0] * a + r[1] * c, r[0] * b + r[1] * d};
    }
};

} // namespace vqcs
