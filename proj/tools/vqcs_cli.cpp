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
// vqcs command-line front end. Every subcommand writes one CSV table or one
// JSON document to --output (stdout by default).

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include "vqcs/vqcs.hpp"

namespace {

using nlohmann::ordered_json;
using namespace vqcs;

enum class Format { Csv, Json };

struct Common {
    std::string output;
    std::string format = "json";
    std::string init = "zero";
    std::uint64_t seed = 1;
    int restarts = 16;
    int nodes = 512;
    bool strict = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

InitialState parse_init(const std::string &s) {
    if (s == "zero") {
        return InitialState::AllZero;
    }
    if (s == "plus") {
        return InitialState::AllPlus;
    }
    throw UsageError("--init must be zero or plus");
}

// JSON numbers with 17 significant digits
ordered_json num(double v) {
    if (!std::isfinite(v)) {
        return io::fmt(v);
    }
    return ordered_json::parse(io::fmt(v));
}

ordered_json angles_json(const AngleSchedule &s) {
    ordered_json g = ordered_json::array();
    ordered_json b = ordered_json::array();
    for (double x : s.gamma) {
        g.push_back(num(x));
    }
    for (double x : s.beta) {
        b.push_back(num(x));
    }
    return {{"gamma", g}, {"beta", b}};
}

class Output {
  public:
    Output(const Common &c, std::string command) : c_(c), command_(std::move(command)) {}

    void add_config(const std::string &k, const std::string &v) { config_.emplace_back(k, v); }

    io::Provenance provenance() const {
        std::string canon = command_;
        for (const auto &[k, v] : config_) {
            canon += ";" + k + "=" + v;
        }
        io::Provenance p{{"vqcs", version}, {"command", command_}, {"seed", std::to_string(c_.seed)}};
        p.insert(p.end(), config_.begin(), config_.end());
        p.emplace_back("config_hash", io::hex(io::config_hash(canon)));
        return p;
    }

    void emit(const ordered_json &j, const io::Table &t) const {
        std::ostringstream os;
        if (c_.format == "csv") {
            io::write_csv(os, t);
        } else {
            ordered_json doc;
            ordered_json prov;
            for (const auto &[k, v] : provenance()) {
                prov[k] = v;
            }
            doc["provenance"] = prov;
            doc["result"] = j;
            os << doc.dump(2) << '\n';
        }
        if (c_.output.empty() || c_.output == "-") {
            std::cout << os.str();
        } else {
            std::ofstream f(c_.output);
            if (!f) {
                throw std::runtime_error("cannot open " + c_.output);
            }
            f << os.str();
        }
    }

  private:
    const Common &c_;
    std::string command_;
    io::Provenance config_;
};

// a flag raised anywhere promotes to exit 2 under --strict
struct Flags {
    std::vector<std::string> raised;
    void check(bool ok, const std::string &what) {
        if (!ok) {
            raised.push_back(what);
        }
    }
    ordered_json json() const { return raised; }
};

io::Table kv_table(const Output &out, const std::vector<std::pair<std::string, std::string>> &kv) {
    io::Table t;
    t.provenance = out.provenance();
    t.header = {"key", "value"};
    for (const auto &[k, v] : kv) {
        t.rows.push_back({k, v});
    }
    return t;
}

std::vector<int> parse_int_list(const std::string &s) {
    std::vector<int> out;
    for (const auto &tok : io::split(s, ',')) {
        if (!tok.empty()) {
            out.push_back(std::stoi(tok));
        }
    }
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) {
        throw UsageError("grid needs at least one point");
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    }
    return out;
}

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("-o,--output", c.output, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--init", c.init, "initial state: zero (|0...0>) or plus (|+...+>)")
        ->check(CLI::IsMember({"zero", "plus"}));
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--restarts", c.restarts, "random restarts per optimization")->check(CLI::PositiveNumber);
    sub->add_option("--nodes", c.nodes, "quadrature nodes for m_X / m_XX")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", c.strict, "exit 2 when any convergence flag is raised");
}

ordered_json result_json(const OptimizationResult &r, double h) {
    return {{"h", num(h)},
            {"p", r.schedule.depth()},
            {"L", r.L},
            {"F", num(r.F)},
            {"F_minus_F_inf", num(r.F - ground_energy_density_inf(h))},
            {"grad_norm", num(r.grad_norm)},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"T", num(r.T)},
            {"T_canonical", num(r.T_canonical)},
            {"branch_key", io::hex(r.branch_key)},
            {"restarts", r.restarts},
            {"restarts_converged", r.restarts_converged},
            {"angles", angles_json(r.schedule)}};
}

std::vector<std::pair<std::string, std::string>> result_kv(const OptimizationResult &r, double h) {
    return {{"h", io::fmt(h)},
            {"p", std::to_string(r.schedule.depth())},
            {"L", std::to_string(r.L)},
            {"F", io::fmt(r.F)},
            {"F_minus_F_inf", io::fmt(r.F - ground_energy_density_inf(h))},
            {"grad_norm", io::fmt(r.grad_norm)},
            {"iterations", std::to_string(r.iterations)},
            {"converged", r.converged ? "true" : "false"},
            {"T", io::fmt(r.T)},
            {"T_canonical", io::fmt(r.T_canonical)},
            {"branch_key", io::hex(r.branch_key)},
            {"angles", io::schedule_string(r.schedule)}};
}

SweepTable read_sweep_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot read " + path);
    }
    return io::parse_sweep(io::read_csv(f));
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational circuits for the transverse-field Ising chain"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));
    Common c;
    Flags flags;
    std::function<void()> action;

    // optimize
    double h = 1.0;
    int p = 1;
    int L = 0;
    bool ladder = false;
    auto *optimize = app.add_subcommand("optimize", "minimize the energy density at depth p");
    add_common(optimize, c);
    optimize->add_option("--h", h, "transverse field")->required()->check(CLI::NonNegativeNumber);
    optimize->add_option("--p", p, "circuit depth")->required()->check(CLI::PositiveNumber);
    optimize->add_option("--L", L, "chain length (default 4p)");
    optimize->add_flag("--ladder", ladder, "warm-start through depths 1..p");
    optimize->callback([&] {
        action = [&] {
            Output out(c, "optimize");
            out.add_config("h", io::fmt(h));
            out.add_config("p", std::to_string(p));
            out.add_config("init", c.init);
            out.add_config("restarts", std::to_string(c.restarts));
            out.add_config("ladder", ladder ? "true" : "false");
            OptimizerSettings s;
            s.L = L;
            const auto init = parse_init(c.init);
            const auto r = ladder ? minimize_depth_ladder(h, p, init, c.seed, c.restarts, s).back()
                                  : minimize(h, p, init, c.seed, c.restarts, s);
            flags.check(r.converged, "optimizer_not_converged");
            auto j = result_json(r, h);
            j["flags"] = flags.json();
            out.emit(j, kv_table(out, result_kv(r, h)));
        };
    });

    // observables
    std::string angles;
    std::string ells = "1,2,3,4,5";
    auto *observables = app.add_subcommand("observables", "energy, overlap, m_X, m_XX and m_Z of one circuit");
    add_common(observables, c);
    observables->add_option("--h", h, "transverse field")->required()->check(CLI::NonNegativeNumber);
    observables->add_option("--angles", angles,
                            "gamma_1,beta_1,...,gamma_p,beta_p (default: optimize at --p)");
    observables->add_option("--p", p, "depth to optimize when --angles is absent")->check(CLI::PositiveNumber);
    observables->add_option("--L", L, "chain length for energy and overlap (default 4p)");
    observables->add_option("--ell", ells, "comma-separated distances for m_XX");
    observables->callback([&] {
        action = [&] {
            Output out(c, "observables");
            const auto init = parse_init(c.init);
            AngleSchedule s;
            if (!angles.empty()) {
                s = io::parse_schedule(angles);
            } else {
                const auto r = minimize(h, p, init, c.seed, c.restarts);
                flags.check(r.converged, "optimizer_not_converged");
                s = r.schedule;
            }
            const int chain = L > 0 ? L : std::max(4, 4 * s.depth());
            out.add_config("h", io::fmt(h));
            out.add_config("angles", io::schedule_string(s));
            out.add_config("L", std::to_string(chain));
            out.add_config("init", c.init);
            const auto rep = observable_report(GateSequence::from_schedule(s), h, chain, init,
                                               parse_int_list(ells), c.nodes);
            flags.check(rep.m_X_converged, "m_X_not_converged");
            flags.check(rep.m_Z_converged, "m_Z_not_converged");
            flags.check(!rep.singular, "m_Z_kernel_singular");
            ordered_json mxx = ordered_json::object();
            std::vector<std::pair<std::string, std::string>> kv{
                {"h", io::fmt(h)},          {"p", std::to_string(s.depth())},   {"L", std::to_string(chain)},
                {"F", io::fmt(rep.F)},      {"overlap_abs", io::fmt(std::abs(rep.overlap))},
                {"m_X", io::fmt(rep.m_X)},  {"m_Z", io::fmt(rep.m_Z)}};
            for (const auto &[l, v] : rep.m_XX) {
                mxx[std::to_string(l)] = num(v);
                kv.emplace_back("m_XX_" + std::to_string(l), io::fmt(v));
            }
            ordered_json j{{"h", num(h)},
                           {"p", s.depth()},
                           {"L", chain},
                           {"F", num(rep.F)},
                           {"F_minus_F_inf", num(rep.F - ground_energy_density_inf(h))},
                           {"overlap", {{"re", num(rep.overlap.real())}, {"im", num(rep.overlap.imag())}}},
                           {"overlap_abs", num(std::abs(rep.overlap))},
                           {"m_X", num(rep.m_X)},
                           {"m_XX", mxx},
                           {"m_Z", num(rep.m_Z)},
                           {"m_Z_sign_known", rep.m_Z_sign_known},
                           {"m_X_converged", rep.m_X_converged},
                           {"m_Z_converged", rep.m_Z_converged},
                           {"fredholm_nodes", rep.fredholm_nodes},
                           {"angles", angles_json(s)},
                           {"flags", flags.json()}};
            out.emit(j, kv_table(out, kv));
        };
    });

    // sweep
    double h_min = 0.5;
    double h_max = 1.5;
    int h_steps = 11;
    std::string p_list = "4";
    bool no_chi = false;
    auto *sweep_cmd = app.add_subcommand("sweep", "optimize and measure on an h x p grid (CSV rows)");
    add_common(sweep_cmd, c);
    sweep_cmd->add_option("--h-min", h_min, "first field")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--h-max", h_max, "last field")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--h-steps", h_steps, "number of fields")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--p-list", p_list, "comma-separated depths");
    sweep_cmd->add_flag("--no-chi", no_chi, "skip the susceptibility column");
    sweep_cmd->callback([&] {
        action = [&] {
            Output out(c, "sweep");
            out.add_config("h_min", io::fmt(h_min));
            out.add_config("h_max", io::fmt(h_max));
            out.add_config("h_steps", std::to_string(h_steps));
            out.add_config("p_list", p_list);
            out.add_config("init", c.init);
            out.add_config("restarts", std::to_string(c.restarts));
            SweepOptions o;
            o.restarts = c.restarts;
            o.susceptibility = !no_chi;
            const auto table = sweep(linspace(h_min, h_max, h_steps), parse_int_list(p_list), parse_init(c.init),
                                     c.seed, o);
            ordered_json rows = ordered_json::array();
            for (const auto &r : table.rows) {
                flags.check(r.status == "ok", "row h=" + io::fmt(r.h) + " p=" + std::to_string(r.p) + ": " + r.status);
                rows.push_back({{"h", num(r.h)},
                                {"p", r.p},
                                {"F", num(r.F)},
                                {"F_minus_F_inf", num(r.residual)},
                                {"m_X", num(r.m_X)},
                                {"m_Z", num(r.m_Z)},
                                {"chi_X", num(r.chi_X)},
                                {"branch_key", io::hex(r.branch_key)},
                                {"T", num(r.T)},
                                {"status", r.status},
                                {"angles", angles_json(r.schedule)}});
            }
            out.emit({{"rows", rows}, {"flags", flags.json()}}, io::sweep_table(table, out.provenance()));
        };
    });

    // energy-scaling
    std::string input;
    std::string regime = "auto";
    int p_min = 8;
    int p_max = 48;
    auto *scaling = app.add_subcommand("energy-scaling", "fit F - F_inf against depth");
    add_common(scaling, c);
    scaling->add_option("--input", input, "sweep CSV (uses rows at --h); otherwise optimize a depth ladder");
    scaling->add_option("--h", h, "transverse field")->check(CLI::NonNegativeNumber);
    scaling->add_option("--p-min", p_min, "smallest depth in the fit")->check(CLI::PositiveNumber);
    scaling->add_option("--p-max", p_max, "largest depth in the fit")->check(CLI::PositiveNumber);
    scaling->add_option("--regime", regime, "sub, critical, super or auto (from h)")
        ->check(CLI::IsMember({"auto", "sub", "critical", "super"}));
    scaling->callback([&] {
        action = [&] {
            Output out(c, "energy-scaling");
            out.add_config("h", io::fmt(h));
            out.add_config("p_min", std::to_string(p_min));
            out.add_config("p_max", std::to_string(p_max));
            out.add_config("input", input);
            std::vector<int> ps;
            std::vector<double> res;
            if (!input.empty()) {
                for (const auto &r : read_sweep_file(input).rows) {
                    if (std::abs(r.h - h) < 1e-12 && r.p >= p_min && r.p <= p_max && r.status == "ok") {
                        ps.push_back(r.p);
                        res.push_back(r.residual);
                    }
                }
            } else {
                const auto s = depth_series(h, p_max, parse_init(c.init), c.seed, c.restarts);
                for (int q = p_min; q <= p_max; ++q) {
                    ps.push_back(q);
                    res.push_back(s.residual[static_cast<std::size_t>(q - 1)]);
                    flags.check(s.optima[static_cast<std::size_t>(q - 1)].converged,
                                "p=" + std::to_string(q) + " not converged");
                }
            }
            Regime rg = h < 1.0 ? Regime::Sub : (h > 1.0 ? Regime::Super : Regime::Critical);
            if (regime == "sub") {
                rg = Regime::Sub;
            } else if (regime == "critical") {
                rg = Regime::Critical;
            } else if (regime == "super") {
                rg = Regime::Super;
            }
            const auto fit = fit_energy_scaling(ps, res, rg);
            flags.check(!fit.regime_mismatch, "regime_mismatch");
            ordered_json series = ordered_json::array();
            for (std::size_t i = 0; i < ps.size(); ++i) {
                series.push_back({{"p", ps[i]}, {"F_minus_F_inf", num(res[i])}});
            }
            ordered_json j{{"h", num(h)},        {"regime", to_string(rg)},   {"A", num(fit.A)},
                           {"lambda", num(fit.lambda)}, {"c", num(fit.c)},    {"c_single", num(fit.c_single)},
                           {"B", num(fit.B)},    {"slope", num(fit.slope)},   {"r2", num(fit.r2)},
                           {"regime_mismatch", fit.regime_mismatch},          {"series", series},
                           {"flags", flags.json()}};
            out.emit(j, kv_table(out, {{"regime", to_string(rg)},
                                       {"A", io::fmt(fit.A)},
                                       {"lambda", io::fmt(fit.lambda)},
                                       {"c", io::fmt(fit.c)},
                                       {"c_single", io::fmt(fit.c_single)},
                                       {"B", io::fmt(fit.B)},
                                       {"slope", io::fmt(fit.slope)},
                                       {"r2", io::fmt(fit.r2)}}));
        };
    });

    // collapse
    double hc = 1.0;
    std::string side = "below";
    bool fit_hc = false;
    auto *collapse = app.add_subcommand("collapse", "finite-depth scaling collapse of m_Z from a sweep CSV");
    add_common(collapse, c);
    collapse->add_option("--input", input, "sweep CSV")->required();
    collapse->add_option("--hc", hc, "critical field");
    collapse->add_option("--side", side, "below, above or both")->check(CLI::IsMember({"below", "above", "both"}));
    collapse->add_flag("--fit-hc", fit_hc, "also fit h_c within 0.05 of --hc");
    collapse->callback([&] {
        action = [&] {
            Output out(c, "collapse");
            out.add_config("input", input);
            out.add_config("hc", io::fmt(hc));
            out.add_config("side", side);
            const auto data = io::collapse_data(read_sweep_file(input));
            const auto sd = side == "below" ? CollapseSide::Below
                                            : (side == "above" ? CollapseSide::Above : CollapseSide::Both);
            const auto fit = fit_hc ? collapse_fit_free_hc(data, hc, sd) : collapse_fit(data, hc, sd);
            flags.check(fit.converged, "collapse_not_converged");
            ordered_json j{{"h_c", num(fit.h_c)},     {"beta", num(fit.beta)},   {"nu", num(fit.nu)},
                           {"objective", num(fit.objective)}, {"h_min", num(fit.h_min)},
                           {"h_max", num(fit.h_max)}, {"p_list", fit.p_list},    {"points", fit.points},
                           {"side", side},            {"flags", flags.json()}};
            out.emit(j, kv_table(out, {{"h_c", io::fmt(fit.h_c)},
                                       {"beta", io::fmt(fit.beta)},
                                       {"nu", io::fmt(fit.nu)},
                                       {"objective", io::fmt(fit.objective)},
                                       {"points", std::to_string(fit.points)}}));
        };
    });

    // branches
    int samples = 100;
    auto *branches = app.add_subcommand("branches", "enumerate degenerate optimal branches");
    add_common(branches, c);
    branches->add_option("--h", h, "transverse field")->required()->check(CLI::NonNegativeNumber);
    branches->add_option("--p", p, "circuit depth")->required()->check(CLI::PositiveNumber);
    branches->add_option("--samples", samples, "random starts")->check(CLI::PositiveNumber);
    branches->callback([&] {
        action = [&] {
            Output out(c, "branches");
            out.add_config("h", io::fmt(h));
            out.add_config("p", std::to_string(p));
            out.add_config("samples", std::to_string(samples));
            out.add_config("init", c.init);
            const auto init = parse_init(c.init);
            const auto census = enumerate_branches(h, p, samples, c.seed, init);
            flags.check(census.converged > 0, "no_converged_sample");
            io::Table t;
            t.provenance = out.provenance();
            t.header = {"branch_key", "F", "m_X", "m_Z", "T", "T_canonical", "count", "angles"};
            ordered_json list = ordered_json::array();
            for (const auto &b : census.branches) {
                const auto seq = GateSequence::from_schedule(b.schedule);
                const double mx = magnetization_x(circuit_source(seq, init), c.nodes).value;
                const double mz = circuit_magnetization_z(seq, init).value;
                t.rows.push_back({io::hex(b.key), io::fmt(b.F), io::fmt(mx), io::fmt(mz), io::fmt(b.T),
                                  io::fmt(b.T_canonical), std::to_string(b.count), io::schedule_string(b.schedule)});
                list.push_back({{"branch_key", io::hex(b.key)},
                                {"F", num(b.F)},
                                {"m_X", num(mx)},
                                {"m_Z", num(mz)},
                                {"T", num(b.T)},
                                {"T_canonical", num(b.T_canonical)},
                                {"count", b.count},
                                {"angles", angles_json(b.schedule)}});
            }
            out.emit({{"h", num(h)},
                      {"p", p},
                      {"samples", census.samples},
                      {"converged", census.converged},
                      {"F_min", num(census.F_min)},
                      {"branches", list},
                      {"flags", flags.json()}},
                     t);
        };
    });

    // quench
    double h0 = 0.4;
    double t_max = 2.0;
    int t_steps = 21;
    int oracle_L = 0;
    auto *quench = app.add_subcommand("quench", "order parameter after a field quench h0 -> h");
    add_common(quench, c);
    quench->add_option("--h0", h0, "initial field")->required()->check(CLI::NonNegativeNumber);
    quench->add_option("--h", h, "final field")->required()->check(CLI::NonNegativeNumber);
    quench->add_option("--t-max", t_max, "last time")->check(CLI::NonNegativeNumber);
    quench->add_option("--t-steps", t_steps, "number of times")->check(CLI::PositiveNumber);
    quench->add_option("--oracle-L", oracle_L, "also run the dense simulator on this many sites");
    quench->callback([&] {
        action = [&] {
            Output out(c, "quench");
            out.add_config("h0", io::fmt(h0));
            out.add_config("h", io::fmt(h));
            out.add_config("t_max", io::fmt(t_max));
            out.add_config("t_steps", std::to_string(t_steps));
            out.add_config("oracle_L", std::to_string(oracle_L));
            const auto times = linspace(0.0, t_max, t_steps);
            const auto series = quench_magnetization(h0, h, times);
            std::vector<double> dense;
            if (oracle_L > 0) {
                dense = quench_magnetization_oracle(h0, h, times, oracle_L);
            }
            io::Table t;
            t.provenance = out.provenance();
            t.header = {"t", "m_Z", "converged", "singular"};
            if (!dense.empty()) {
                t.header.push_back("m_Z_dense");
            }
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < series.size(); ++i) {
                const auto &q = series[i];
                flags.check(q.m_Z.converged && !q.m_Z.singular, "t=" + io::fmt(q.t) + " not converged");
                std::vector<std::string> row{io::fmt(q.t), io::fmt(q.m_Z.value), q.m_Z.converged ? "1" : "0",
                                             q.m_Z.singular ? "1" : "0"};
                ordered_json jr{{"t", num(q.t)},
                                {"m_Z", num(q.m_Z.value)},
                                {"converged", q.m_Z.converged},
                                {"singular", q.m_Z.singular}};
                if (!dense.empty()) {
                    row.push_back(io::fmt(dense[i]));
                    jr["m_Z_dense"] = num(dense[i]);
                }
                t.rows.push_back(row);
                rows.push_back(jr);
            }
            out.emit({{"h0", num(h0)}, {"h", num(h)}, {"series", rows}, {"flags", flags.json()}}, t);
        };
    });

    // prepare-exact
    int max_starts = 200;
    auto *prepare = app.add_subcommand("prepare-exact", "solve f_proj = 0 on NS+ from |+...+> at p = L/2");
    add_common(prepare, c);
    prepare->add_option("--L", L, "chain length (even, <= 16)")->required();
    prepare->add_option("--h", h, "target field")->check(CLI::NonNegativeNumber);
    prepare->add_option("--max-starts", max_starts, "multi-start budget")->check(CLI::PositiveNumber);
    prepare->callback([&] {
        action = [&] {
            Output out(c, "prepare-exact");
            out.add_config("L", std::to_string(L));
            out.add_config("h", io::fmt(h));
            out.add_config("max_starts", std::to_string(max_starts));
            const auto r = solve_exact_preparation(L, h, c.seed, max_starts);
            flags.check(r.success, "no_solution_found");
            ordered_json j{{"L", r.L},
                           {"h", num(r.h)},
                           {"p", r.schedule.depth()},
                           {"success", r.success},
                           {"max_residual", num(r.max_residual)},
                           {"overlap_product", num(r.overlap_product)},
                           {"overlap_modulus", num(r.overlap_modulus)},
                           {"overlap_oracle", num(r.overlap_oracle)},
                           {"starts", r.starts},
                           {"gate_order", "zz_first"},
                           {"angles", angles_json(r.schedule)},
                           {"flags", flags.json()}};
            out.emit(j, kv_table(out, {{"success", r.success ? "true" : "false"},
                                       {"max_residual", io::fmt(r.max_residual)},
                                       {"overlap_product", io::fmt(r.overlap_product)},
                                       {"overlap_modulus", io::fmt(r.overlap_modulus)},
                                       {"overlap_oracle", io::fmt(r.overlap_oracle)},
                                       {"starts", std::to_string(r.starts)},
                                       {"angles", io::schedule_string(r.schedule)}}));
        };
    });

    // oracle-check
    double tolerance = 1e-9;
    auto *check = app.add_subcommand("oracle-check", "closed forms against the dense simulator on random angles");
    add_common(check, c);
    check->add_option("--L", L, "chain length (even, <= 16)")->required();
    check->add_option("--p", p, "circuit depth")->required()->check(CLI::PositiveNumber);
    check->add_option("--h", h, "transverse field")->required()->check(CLI::NonNegativeNumber);
    check->add_option("--tolerance", tolerance, "pass threshold");
    check->callback([&] {
        action = [&] {
            Output out(c, "oracle-check");
            out.add_config("L", std::to_string(L));
            out.add_config("p", std::to_string(p));
            out.add_config("h", io::fmt(h));
            out.add_config("init", c.init);
            if (L < 2 || L % 2 != 0 || L > 16) {
                throw UsageError("--L must be even and between 2 and 16");
            }
            const auto init = parse_init(c.init);
            const auto s = AngleSchedule::from_flat(detail::random_start(p, c.seed, 0));
            const auto seq = GateSequence::from_schedule(s);
            const auto st = oracle::simulate(L, seq, init);
            const auto gs = oracle::ground_state(L, h);
            const double e_oracle = oracle::energy(st, h) / L;
            const double ov_oracle = std::abs(oracle::inner(gs.even.state, st));
            const auto rep = observable_report(seq, h, L, init, {1, 2}, c.nodes);
            const std::vector<std::pair<std::string, double>> dev{
                {"energy", std::abs(rep.F - e_oracle)},
                {"overlap", std::abs(std::abs(rep.overlap) - ov_oracle)},
                {"m_X", std::abs(rep.m_X - oracle::expectation(st, oracle::Observable::X))},
                {"m_XX_1", std::abs(rep.m_XX.at(1) - oracle::site_expectation(st, oracle::Observable::XX, 1).mean)},
                {"m_XX_2", std::abs(rep.m_XX.at(2) - oracle::site_expectation(st, oracle::Observable::XX, 2).mean)},
                {"m_Z", std::abs(rep.m_Z - oracle::expectation(st, oracle::Observable::Z))}};
            ordered_json d = ordered_json::object();
            std::vector<std::pair<std::string, std::string>> kv;
            bool pass = true;
            for (const auto &[k, v] : dev) {
                d[k] = num(v);
                kv.emplace_back(k, io::fmt(v));
                pass = pass && v < tolerance;
            }
            flags.check(pass, "deviation_above_tolerance");
            kv.emplace_back("pass", pass ? "true" : "false");
            out.emit({{"L", L},
                      {"p", p},
                      {"h", num(h)},
                      {"max_abs_deviation", d},
                      {"tolerance", num(tolerance)},
                      {"pass", pass},
                      {"angles", angles_json(s)},
                      {"flags", flags.json()}},
                     kv_table(out, kv));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        action();
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    if (!flags.raised.empty()) {
        for (const auto &f : flags.raised) {
            std::cerr << "flag: " << f << '\n';
        }
        if (c.strict) {
            return 2;
        }
    }
    return 0;
}
