// Copyright 2026 The reinsure Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reinsure/asymptotic.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/experiments.hpp"
#include "reinsure/objectives.hpp"
#include "reinsure/risk_measures.hpp"
#include "reinsure/serialization.hpp"

namespace fs = std::filesystem;
using namespace reinsure;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct RunConfig {
    std::string scenario;
    std::string out;
    int grid = 0;  // 0 keeps the command default
    int nodes = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string objective = "K";
    double step = 0.005;
    std::size_t clt_n = 200;
    std::size_t samples = 100000;
    double retention = 0.5;
    double limit = 2.0;
};

void validate(const RunConfig& rc) {
    if (rc.grid != 0 && rc.grid < 2) throw ConfigError("--grid must be >= 2");
    if (rc.nodes < 0 || rc.nodes > 4096) throw ConfigError("--nodes must be in [0, 4096]");
    if (rc.workers < 1) throw ConfigError("--workers must be >= 1");
    if (!(rc.step > 0.0 && rc.step < 0.5)) throw ConfigError("--step must be in (0, 0.5)");
    if (!rc.out.empty()) {
        std::error_code ec;
        fs::create_directories(rc.out, ec);
        if (ec) throw ConfigError("cannot create output directory '" + rc.out + "': " + ec.message());
    }
}

SearchConfig search_config(const RunConfig& rc, int default_grid) {
    SearchConfig cfg;
    cfg.grid_points = rc.grid != 0 ? rc.grid : default_grid;
    cfg.workers = rc.workers;
    return cfg;
}

// Prints to stdout and, with --out, also writes DIR/name.
void emit(const RunConfig& rc, const std::string& name, const std::string& text) {
    std::cout << text;
    if (rc.out.empty()) return;
    const fs::path path = fs::path(rc.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << text;
}

Scenario need_scenario(const RunConfig& rc) {
    if (rc.scenario.empty()) throw ConfigError("--scenario is required");
    return load_scenario(rc.scenario);
}

void cmd_measure(const RunConfig& rc) {
    const Scenario s = need_scenario(rc);
    QuadratureConfig q;
    if (rc.nodes > 0) q = {IntegrationMethod::gauss_legendre, rc.nodes};
    Json out = Json::array();
    auto value_at = [&](const Distribution& d, const RiskLevels& l) {
        if (s.mode == Mode::VaR) return var(d, l.alpha);
        return rvar(d, l, q);
    };
    for (std::size_t i = 0; i < s.n(); ++i) {
        const Distribution& d = s.marginals[i];
        for (const auto& [role, lv] : {std::pair{"insurer", s.insurer_levels[i]}, std::pair{"reinsurer", s.reinsurer_levels}}) {
            Json rec{{"insurer", i + 1}, {"role", role}, {"distribution", to_json(d)}, {"levels", to_json(lv)},
                     {"measure", s.mode == Mode::VaR ? "VaR" : "RVaR"}};
            rec["value"] = number_to_json(value_at(d, lv));
            out.push_back(rec);
        }
    }
    emit(rc, "measure.json", out.dump(2) + "\n");
}

void cmd_table1(const RunConfig& rc) {
    std::ostringstream os;
    write_table1_csv(os, table1(search_config(rc, 401)));
    emit(rc, "table1.csv", os.str());
}

void cmd_table2(const RunConfig& rc) {
    std::ostringstream os;
    write_table2_csv(os, table2(search_config(rc, 401)));
    emit(rc, "table2.csv", os.str());
}

void cmd_figures(const RunConfig& rc) {
    const SearchConfig cfg = search_config(rc, 101);
    std::ostringstream f2, f3;
    write_figure_csv(f2, figure2(cfg, rc.step));
    write_figure_csv(f3, figure3(cfg, rc.step));
    if (rc.out.empty()) {
        std::cout << "# figure2\n" << f2.str() << "# figure3\n" << f3.str();
        return;
    }
    std::ofstream(fs::path(rc.out) / "figure2.csv", std::ios::binary) << f2.str();
    std::ofstream(fs::path(rc.out) / "figure3.csv", std::ios::binary) << f3.str();
    std::cout << "wrote " << (fs::path(rc.out) / "figure2.csv").string() << " and "
              << (fs::path(rc.out) / "figure3.csv").string() << "\n";
}

void cmd_optimize(const RunConfig& rc) {
    const Scenario s = need_scenario(rc);
    const ObjectiveId id = parse_objective(rc.objective);
    const OptimizeResult r = minimize(id, s, search_config(rc, 401));
    Json j = to_json(r);
    j["scenario"] = to_json(s);
    emit(rc, "optimize.json", j.dump(2) + "\n");
}

void cmd_clt(const RunConfig& rc) {
    const Scenario s = need_scenario(rc);
    if (!(rc.limit >= rc.retention && rc.retention >= 0.0)) throw ConfigError("clt: need 0 <= retention <= limit");
    const Indemnity f = Indemnity::layer(rc.retention, rc.limit);
    CltConfig c{rc.clt_n, rc.samples, rc.seed, rc.workers};
    const double ks = clt_check(s.marginals.at(0), f, c);
    Json j{{"n", rc.clt_n}, {"samples", rc.samples}, {"seed", rc.seed}, {"contract", to_json(f)}, {"ks", ks}};
    emit(rc, "clt.json", j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reinsurance design under dependence uncertainty"};
    app.require_subcommand(1);
    RunConfig rc;
    app.add_option("--scenario", rc.scenario, "Scenario JSON file");
    app.add_option("--out", rc.out, "Output directory (created if absent)");
    app.add_option("--grid", rc.grid, "Grid points per retention dimension");
    app.add_option("--nodes", rc.nodes, "Gauss-Legendre nodes for risk measures (0: closed form)");
    app.add_option("--seed", rc.seed, "Seed for Monte Carlo commands");
    app.add_option("--workers", rc.workers, "Worker threads");

    auto* measure = app.add_subcommand("measure", "Risk measures of each marginal at the scenario levels");
    auto* t1 = app.add_subcommand("table1", "Optimal layers for the three two-insurer cases and regimes");
    auto* t2 = app.add_subcommand("table2", "Worst-case optima with high insurer levels");
    auto* figs = app.add_subcommand("figures", "Objective and benefit sweeps");
    figs->add_option("--step", rc.step, "Sweep step");
    auto* opt = app.add_subcommand("optimize", "Minimize one objective for a scenario");
    opt->add_option("--objective", rc.objective, "G, R, Gbar, L, H, G1bar, K or TildeG");
    auto* clt = app.add_subcommand("clt", "KS distance of a standardized layered sum");
    clt->add_option("--n", rc.clt_n, "Number of summands");
    clt->add_option("--samples", rc.samples, "Monte Carlo draws");
    clt->add_option("--retention", rc.retention, "Layer retention");
    clt->add_option("--limit", rc.limit, "Layer upper end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        validate(rc);
        if (*measure) cmd_measure(rc);
        if (*t1) cmd_table1(rc);
        if (*t2) cmd_table2(rc);
        if (*figs) cmd_figures(rc);
        if (*opt) cmd_optimize(rc);
        if (*clt) cmd_clt(rc);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
