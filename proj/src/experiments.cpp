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

#include "reinsure/experiments.hpp"

#include <cmath>
#include <cstdio>

#include "reinsure/errors.hpp"

namespace reinsure {

namespace {

Distribution base_lomax() { return Distribution::lomax(9.0, 8.0); }

constexpr Dependence kRegimes[] = {Dependence::WorstCase, Dependence::Comonotonic, Dependence::IID};

double no_reinsurance(const Scenario& s) {
    double total = 0.0;
    for (double b : reduce_caps(s)) total += b;
    return total;
}

std::vector<FigureRow> sweep(const std::vector<double>& xs, bool reinsurer_side, const SearchConfig& cfg) {
    std::vector<FigureRow> out;
    for (Dependence dep : kRegimes) {
        for (double x : xs) {
            const double alpha = reinsurer_side ? x : 0.9;
            const double ai = reinsurer_side ? 0.9 : x;
            const Scenario s = Scenario::var_mode({base_lomax(), base_lomax()}, {ai, ai}, alpha, dep);
            const OptimizeResult r = minimize(ObjectiveId::K, s, cfg);
            out.push_back({x, dep, r.objective, no_reinsurance(s) - r.objective});
        }
    }
    return out;
}

std::string interval_text(const OptimizeResult& r, std::size_t i) {
    const auto iv = find_interval(r, i, 'a');
    if (!iv) return format_number(r.params[i].a);
    return "[" + format_number(iv->lo) + ";" + format_number(iv->hi) + "]";
}

}  // namespace

Scenario table1_scenario(int case_id, Dependence regime) {
    double a1, a2, alpha;
    switch (case_id) {
        case 1: a1 = 0.9, a2 = 0.85, alpha = 0.95; break;
        case 2: a1 = 0.95, a2 = 0.85, alpha = 0.9; break;
        case 3: a1 = 0.95, a2 = 0.9, alpha = 0.85; break;
        default: throw DomainError("table1_scenario: case must be 1, 2 or 3");
    }
    return Scenario::var_mode({base_lomax(), base_lomax()}, {a1, a2}, alpha, regime);
}

Scenario table2_scenario(double alpha1, double alpha2) {
    return Scenario::var_mode({base_lomax(), Distribution::lomax(6.0, 5.0)}, {alpha1, alpha2}, 0.9,
                              Dependence::WorstCase);
}

std::vector<Table1Row> table1(const SearchConfig& cfg) {
    std::vector<Table1Row> rows;
    for (int c = 1; c <= 3; ++c) {
        for (Dependence dep : kRegimes) {
            rows.push_back({c, dep, minimize(ObjectiveId::K, table1_scenario(c, dep), cfg)});
        }
    }
    return rows;
}

std::vector<Table2Row> table2(const SearchConfig& cfg) {
    const double levels[5][2] = {{0.97, 0.99}, {0.98, 0.99}, {0.99, 0.99}, {0.99, 0.98}, {0.99, 0.97}};
    std::vector<Table2Row> rows;
    for (std::size_t k = 0; k < 5; ++k) {
        const double a1 = levels[k][0], a2 = levels[k][1];
        Table2Row row{a1, a2, minimize(ObjectiveId::G1bar, table2_scenario(a1, a2), cfg), ""};
        if (k == 0) row.note = "label-inconsistent: reference values match the (0.99;0.97) row";
        if (k == 4) row.note = "label-inconsistent: reference values match the (0.97;0.99) row";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> sweep_points(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) throw DomainError("sweep_points: need step > 0 and hi > lo");
    std::vector<double> xs;
    for (long k = 1;; ++k) {
        const double x = lo + static_cast<double>(k) * step;
        if (x >= hi - 1e-12) break;
        xs.push_back(std::round(x * 1e9) / 1e9);
    }
    return xs;
}

std::vector<FigureRow> figure2(const SearchConfig& cfg, double step) {
    return sweep(sweep_points(0.5, 1.0, step), true, cfg);
}

std::vector<FigureRow> figure3(const SearchConfig& cfg, double step) {
    return sweep(sweep_points(0.5, 1.0, step), false, cfg);
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::optional<FlatInterval> find_interval(const OptimizeResult& r, std::size_t insurer, char param) {
    for (const FlatInterval& f : r.flat_intervals) {
        if (f.insurer == insurer && f.param == param) return f;
    }
    return std::nullopt;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows) {
    out << "case,regime,objective,a1_lo,a1_hi,a2_lo,a2_hi,t_star\n";
    for (const Table1Row& row : rows) {
        const OptimizeResult& r = row.result;
        out << row.case_id << ',' << dependence_name(row.regime) << ',' << format_number(r.objective);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto iv = find_interval(r, i, 'a');
            out << ',' << format_number(iv ? iv->lo : r.params[i].a) << ','
                << format_number(iv ? iv->hi : r.params[i].a);
        }
        out << ',' << (r.t_star ? format_number(*r.t_star) : "") << '\n';
    }
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows) {
    out << "alpha1,alpha2,objective,a1_interval,a2_interval,t_star,note\n";
    for (const Table2Row& row : rows) {
        const OptimizeResult& r = row.result;
        out << format_number(row.alpha1) << ',' << format_number(row.alpha2) << ',' << format_number(r.objective)
            << ',' << interval_text(r, 0) << ',' << interval_text(r, 1) << ','
            << (r.t_star ? format_number(*r.t_star) : "") << ',' << row.note << '\n';
    }
}

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
    out << "sweep_value,regime,objective,benefit\n";
    for (const FigureRow& row : rows) {
        out << format_number(row.sweep_value) << ',' << dependence_name(row.regime) << ','
            << format_number(row.objective) << ',' << format_number(row.benefit) << '\n';
    }
}

}  // namespace reinsure
