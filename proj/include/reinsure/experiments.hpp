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

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "reinsure/objectives.hpp"
#include "reinsure/scenario.hpp"

namespace reinsure {

// Two Lomax(9,8) insurers under the levels of case 1, 2 or 3.
Scenario table1_scenario(int case_id, Dependence regime);
// Lomax(9,8) and Lomax(6,5) at reinsurer level 0.9, worst case.
Scenario table2_scenario(double alpha1, double alpha2);

struct Table1Row {
    int case_id;
    Dependence regime;
    OptimizeResult result;
};

struct Table2Row {
    double alpha1;
    double alpha2;
    OptimizeResult result;
    std::string note;
};

struct FigureRow {
    double sweep_value;
    Dependence regime;
    double objective;
    double benefit;
};

std::vector<Table1Row> table1(const SearchConfig& cfg = {});
std::vector<Table2Row> table2(const SearchConfig& cfg = {});
// Reinsurer level swept over (0.5, 1) with alpha_1 = alpha_2 = 0.9.
std::vector<FigureRow> figure2(const SearchConfig& cfg = {}, double step = 0.005);
// Insurer levels swept over (0.5, 1) with reinsurer level 0.9.
std::vector<FigureRow> figure3(const SearchConfig& cfg = {}, double step = 0.005);

// Sweep points lo + k*step strictly inside (lo, hi).
std::vector<double> sweep_points(double lo, double hi, double step);

// %.6g, with inf printed as "inf".
std::string format_number(double v);

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);
void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows);
void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows);

// First flat interval reported for (insurer, param), if any.
std::optional<FlatInterval> find_interval(const OptimizeResult& r, std::size_t insurer, char param);

}  // namespace reinsure
