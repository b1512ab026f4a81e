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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reinsure/contracts.hpp"
#include "reinsure/scenario.hpp"
#include "reinsure/worst_case.hpp"

namespace reinsure {

enum class ObjectiveId { G, R, Gbar, L, H, G1bar, K, TildeG };

struct SearchConfig {
    int grid_points = 401;       // per retention dimension
    int t_points = 2001;         // inner t grid
    int inner_points = 101;      // inner 1-D contract searches under a fixed gamma
    int refine_rounds = 2;
    int halvings = 12;
    double flat_tolerance = 1e-6;
    std::size_t max_grid_evaluations = 200000;
    int workers = 1;
    bool shortcuts = true;       // cap reduction, boundary-t and no-improvement fast paths
    SimplexSearchConfig simplex{41, 40, 30, 0.5, 1};
};

struct FlatInterval {
    std::size_t insurer;
    char param;  // 'a', 'b' or 'c'
    double lo;
    double hi;
};

struct OptimizeResult {
    ObjectiveId objective_id = ObjectiveId::K;
    std::vector<ContractParams> params;
    double objective = 0.0;
    std::optional<double> t_star;
    std::optional<SimplexPoint> gamma_star;
    std::vector<FlatInterval> flat_intervals;
    std::vector<std::string> warnings;
};

struct BoundaryCertificate {
    bool boundary_only = false;
    std::string reason;
};

struct InnerT {
    double value;
    double t;
};

double objective_G(const Scenario& s, std::span<const double> a, std::span<const double> b);
double objective_R(const Scenario& s, std::span<const ContractParams> p, const SimplexPoint& gamma);
double objective_Gbar(const Scenario& s, std::span<const double> a, std::span<const double> b,
                      const SimplexPoint& gamma);
double objective_L(const Scenario& s, std::span<const double> a, std::span<const double> b,
                   const SimplexPoint& gamma);
double objective_H(const Scenario& s, std::span<const double> a, std::span<const double> b,
                   const SimplexPoint& gamma);
double objective_G1bar(const Scenario& s, std::span<const double> a, std::span<const double> b, double t);
// Regime taken from the scenario.
double objective_K(const Scenario& s, std::span<const double> a, std::span<const double> b,
                   const SearchConfig& cfg = {});
// inf over t of the worst-case layer objective, with the minimizing t.
InnerT worst_case_t(const Scenario& s, std::span<const double> a, std::span<const double> b,
                    const SearchConfig& cfg = {});
// Total objective for arbitrary contracts under the scenario's mode and regime.
double objective_V(const Scenario& s, std::span<const Indemnity> contracts, const SearchConfig& cfg = {});

std::vector<double> reduce_caps(const Scenario& s);
BoundaryCertificate boundary_t_certificate(const Scenario& s);

OptimizeResult minimize(ObjectiveId id, const Scenario& s, const SearchConfig& cfg = {});

// Objective at `params` using the inner witness stored in `r` where the
// objective takes one (gamma); K re-solves its inner t problem.
double evaluate_objective(ObjectiveId id, const Scenario& s, std::span<const ContractParams> params,
                          const OptimizeResult& r, const SearchConfig& cfg = {});

std::string objective_name(ObjectiveId id);
ObjectiveId parse_objective(const std::string& s);
AdmissibleDomain objective_domain(ObjectiveId id);

}  // namespace reinsure
