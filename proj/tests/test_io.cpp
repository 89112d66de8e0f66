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

#include <random>
#include <sstream>

#include "test_support.hpp"

namespace {

using namespace vqcs;

TEST(Format, SeventeenDigitsRoundTrip) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, i % 20 - 10);
        EXPECT_EQ(io::parse_double(io::fmt(v)), v);
    }
}

TEST(Format, RejectsTrailingGarbage) {
    EXPECT_THROW(io::parse_double("1.5x"), PreconditionError);
    EXPECT_THROW(io::parse_double(""), PreconditionError);
}

TEST(Csv, SweepRoundTrip) {
    SweepTable s;
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 20; ++i) {
        SweepRow r;
        r.h = u(rng);
        r.p = i + 1;
        r.F = u(rng);
        r.residual = u(rng);
        r.m_X = u(rng);
        r.m_Z = u(rng);
        r.chi_X = u(rng);
        r.branch_key = rng();
        r.T = u(rng);
        r.status = i % 3 == 0 ? "not_converged" : "ok";
        r.schedule = vqcs::testing::random_schedule(rng, 2);
        s.rows.push_back(r);
    }
    std::stringstream buf;
    io::write_csv(buf, io::sweep_table(s, {{"seed", "52"}}));
    const auto t = io::read_csv(buf);
    ASSERT_EQ(t.provenance.size(), 1U);
    EXPECT_EQ(t.provenance[0].second, "52");
    const auto back = io::parse_sweep(t);
    ASSERT_EQ(back.rows.size(), s.rows.size());
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const auto &a = s.rows[i];
        const auto &b = back.rows[i];
        EXPECT_EQ(a.h, b.h);
        EXPECT_EQ(a.p, b.p);
        EXPECT_EQ(a.F, b.F);
        EXPECT_EQ(a.residual, b.residual);
        EXPECT_EQ(a.m_X, b.m_X);
        EXPECT_EQ(a.m_Z, b.m_Z);
        EXPECT_EQ(a.chi_X, b.chi_X);
        EXPECT_EQ(a.branch_key, b.branch_key);
        EXPECT_EQ(a.T, b.T);
        EXPECT_EQ(a.status, b.status);
        EXPECT_EQ(a.schedule.flat(), b.schedule.flat());
    }
}

TEST(Csv, RowWidthChecked) {
    std::stringstream buf("a,b\n1,2\n3\n");
    EXPECT_THROW(io::read_csv(buf), PreconditionError);
}

TEST(Csv, MissingColumnReported) {
    std::stringstream buf("h,p\n1,2\n");
    EXPECT_THROW(io::parse_sweep(io::read_csv(buf)), PreconditionError);
}

TEST(Csv, CollapseDataSkipsFailedRows) {
    SweepTable s;
    SweepRow good;
    good.h = 0.9;
    good.p = 2;
    good.m_Z = 0.5;
    s.rows.push_back(good);
    SweepRow bad;
    bad.h = 0.95;
    bad.p = 2;
    bad.status = "mz_singular";
    s.rows.push_back(bad);
    const auto d = io::collapse_data(s);
    ASSERT_EQ(d.at(2).size(), 1U);
    EXPECT_EQ(d.at(2)[0].value, 0.5);
}

TEST(Provenance, ConfigHashIsStable) {
    EXPECT_EQ(io::config_hash("sweep;h=1"), io::config_hash("sweep;h=1"));
    EXPECT_NE(io::config_hash("sweep;h=1"), io::config_hash("sweep;h=2"));
}

TEST(Schedule, TextRoundTrip) {
    std::mt19937_64 rng(53);
    const auto s = vqcs::testing::random_schedule(rng, 5);
    EXPECT_EQ(io::parse_schedule(io::schedule_string(s)).flat(), s.flat());
    EXPECT_EQ(io::parse_schedule("0.1,0.2").gamma[0], 0.1);
}

} // namespace
