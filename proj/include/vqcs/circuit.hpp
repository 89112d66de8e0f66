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
 * Circuits made of translation-invariant coherent gates
 * exp(i t sum_j G_j) with G_j one of X_j, Z_j Z_{j+1}, Y_j Y_{j+1}.
 */
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace vqcs {

enum class GateKind { X, ZZ, YY };

inline const char *to_string(GateKind k) {
    switch (k) {
    case GateKind::X:
        return "X";
    case GateKind::ZZ:
        return "ZZ";
    case GateKind::YY:
        return "YY";
    }
    return "?";
}

/// exp(i angle sum_j G_j).
struct Gate {
    GateKind kind = GateKind::X;
    double angle = 0.0;
};

enum class InitialState { AllZero, AllPlus };

inline const char *to_string(InitialState s) {
    return s == InitialState::AllZero ? "zero" : "plus";
}

/// The 2p variational angles. Layer j applies exp(-i gamma_j H_2) =
/// exp(i gamma_j sum X) and then exp(-i beta_j H_1) = exp(i beta_j sum ZZ).
struct AngleSchedule {
    std::vector<double> gamma;
    std::vector<double> beta;

    AngleSchedule() = default;
    AngleSchedule(std::vector<double> g, std::vector<double> b)
        : gamma(std::move(g)), beta(std::move(b)) {
        require(gamma.size() == beta.size(), "gamma and beta must have equal length");
    }

    /// Interleaved (gamma_1, beta_1, ..., gamma_p, beta_p).
    static AngleSchedule from_flat(std::span<const double> x) {
        require(x.size() % 2 == 0, "flat angle vector must have even length");
        AngleSchedule s;
        for (std::size_t i = 0; i < x.size(); i += 2) {
            s.gamma.push_back(x[i]);
            s.beta.push_back(x[i + 1]);
        }
        return s;
    }

    [[nodiscard]] std::vector<double> flat() const {
        std::vector<double> x;
        x.reserve(2 * gamma.size());
        for (std::size_t j = 0; j < gamma.size(); ++j) {
            x.push_back(gamma[j]);
            x.push_back(beta[j]);
        }
        return x;
    }

    [[nodiscard]] int depth() const { return static_cast<int>(gamma.size()); }

    [[nodiscard]] double gamma_sum() const {
        double s = 0.0;
        for (double g : gamma) {
            s += g;
        }
        return s;
    }

    [[nodiscard]] double angle_sum() const {
        double s = gamma_sum();
        for (double b : beta) {
            s += b;
        }
        return s;
    }
};

class GateSequence {
  public:
    GateSequence() = default;
    explicit GateSequence(std::vector<Gate> gates) : gates_(std::move(gates)) {
        for (const auto &g : gates_) {
            require(std::isfinite(g.angle), "gate angles must be finite");
        }
    }

    /// Canonical alternating circuit (X gamma_1, ZZ beta_1, ..., X gamma_p, ZZ beta_p).
    static GateSequence from_schedule(const AngleSchedule &s) {
        std::vector<Gate> gates;
        gates.reserve(2 * s.gamma.size());
        for (std::size_t j = 0; j < s.gamma.size(); ++j) {
            gates.push_back({GateKind::X, s.gamma[j]});
            gates.push_back({GateKind::ZZ, s.beta[j]});
        }
        return GateSequence(std::move(gates));
    }

    [[nodiscard]] std::span<const Gate> gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    /// True for (X, ZZ, X, ZZ, ...) of even length.
    [[nodiscard]] bool is_canonical() const {
        if (gates_.size() % 2 != 0) {
            return false;
        }
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const GateKind want = i % 2 == 0 ? GateKind::X : GateKind::ZZ;
            if (gates_[i].kind != want) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool has_yy() const {
        for (const auto &g : gates_) {
            if (g.kind == GateKind::YY) {
                return true;
            }
        }
        return false;
    }

    /// Half-depth p of a canonical sequence.
    [[nodiscard]] int depth() const { return static_cast<int>(gates_.size() / 2); }

    [[nodiscard]] AngleSchedule schedule() const {
        require(is_canonical(), "sequence is not an alternating X/ZZ circuit");
        AngleSchedule s;
        for (std::size_t i = 0; i < gates_.size(); i += 2) {
            s.gamma.push_back(gates_[i].angle);
            s.beta.push_back(gates_[i + 1].angle);
        }
        return s;
    }

    [[nodiscard]] double x_angle_sum() const {
        double s = 0.0;
        for (const auto &g : gates_) {
            if (g.kind == GateKind::X) {
                s += g.angle;
            }
        }
        return s;
    }

    [[nodiscard]] double angle_sum() const {
        double s = 0.0;
        for (const auto &g : gates_) {
            s += g.angle;
        }
        return s;
    }

    void append(const GateSequence &other) {
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    }

  private:
    std::vector<Gate> gates_;
};

} // namespace vqcs
