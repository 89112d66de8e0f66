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
 * CSV tables with a `#` provenance block, 17-significant-digit formatting,
 * and readers for the sweep schema.
 */
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "experiments.hpp"

namespace vqcs::io {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline double parse_double(const std::string &s) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw PreconditionError("not a number: '" + s + "'");
    }
    return v;
}

inline std::vector<std::string> split(const std::string &line, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

/// FNV-1a over a canonical configuration string.
inline std::uint64_t config_hash(const std::string &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

using Provenance = std::vector<std::pair<std::string, std::string>>;

struct Table {
    Provenance provenance;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string &name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        throw PreconditionError("missing column '" + name + "'");
    }
};

inline void write_csv(std::ostream &os, const Table &t) {
    for (const auto &[k, v] : t.provenance) {
        os << "# " << k << ": " << v << '\n';
    }
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        os << (i ? "," : "") << t.header[i];
    }
    os << '\n';
    for (const auto &r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << (i ? "," : "") << r[i];
        }
        os << '\n';
    }
}

inline Table read_csv(std::istream &is) {
    Table t;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                const auto key = line.substr(2, colon - 2);
                const auto val = colon + 2 <= line.size() ? line.substr(colon + 2) : std::string{};
                t.provenance.emplace_back(key, val);
            }
            continue;
        }
        if (t.header.empty()) {
            t.header = split(line);
            continue;
        }
        auto r = split(line);
        require(r.size() == t.header.size(), "row width differs from header");
        t.rows.push_back(std::move(r));
    }
    require(!t.header.empty(), "CSV has no header row");
    return t;
}

inline std::string schedule_string(const AngleSchedule &s) {
    std::string out;
    const auto x = s.flat();
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += (i ? ";" : "") + fmt(x[i]);
    }
    return out;
}

inline AngleSchedule parse_schedule(const std::string &s) {
    std::vector<double> x;
    for (const auto &tok : split(s, s.find(';') != std::string::npos ? ';' : ',')) {
        x.push_back(parse_double(tok));
    }
    return AngleSchedule::from_flat(x);
}

inline const std::vector<std::string> &sweep_header() {
    static const std::vector<std::string> h{"h", "p", "F", "F_minus_F_inf", "m_X", "m_Z", "chi_X",
                                            "branch_key", "T", "status", "angles"};
    return h;
}

inline Table sweep_table(const SweepTable &s, Provenance provenance) {
    Table t;
    t.provenance = std::move(provenance);
    t.header = sweep_header();
    for (const auto &r : s.rows) {
        t.rows.push_back({fmt(r.h), std::to_string(r.p), fmt(r.F), fmt(r.residual), fmt(r.m_X), fmt(r.m_Z),
                          fmt(r.chi_X), hex(r.branch_key), fmt(r.T), r.status, schedule_string(r.schedule)});
    }
    return t;
}

inline SweepTable parse_sweep(const Table &t) {
    SweepTable s;
    const auto c_h = t.column("h");
    const auto c_p = t.column("p");
    const auto c_F = t.column("F");
    const auto c_r = t.column("F_minus_F_inf");
    const auto c_mx = t.column("m_X");
    const auto c_mz = t.column("m_Z");
    const auto c_chi = t.column("chi_X");
    const auto c_key = t.column("branch_key");
    const auto c_T = t.column("T");
    const auto c_status = t.column("status");
    const auto c_angles = t.column("angles");
    for (const auto &r : t.rows) {
        SweepRow row;
        row.h = parse_double(r[c_h]);
        row.p = std::stoi(r[c_p]);
        row.F = parse_double(r[c_F]);
        row.residual = parse_double(r[c_r]);
        row.m_X = parse_double(r[c_mx]);
        row.m_Z = parse_double(r[c_mz]);
        row.chi_X = parse_double(r[c_chi]);
        row.branch_key = std::stoull(r[c_key], nullptr, 16);
        row.T = parse_double(r[c_T]);
        row.status = r[c_status];
        if (!r[c_angles].empty()) {
            row.schedule = parse_schedule(r[c_angles]);
        }
        s.rows.push_back(std::move(row));
    }
    return s;
}

/// Rows with status "ok", grouped by depth, as m_Z(h) curves.
inline CollapseData collapse_data(const SweepTable &s) {
    CollapseData d;
    for (const auto &r : s.rows) {
        if (r.status == "ok") {
            d[r.p].push_back({r.h, r.m_Z});
        }
    }
    return d;
}

} // namespace vqcs::io
