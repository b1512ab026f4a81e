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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "reinsure/distribution.hpp"
#include "reinsure/risk_measures.hpp"

namespace reinsure {

// (gamma_0, gamma_1, ..., gamma_n) with sum `total` and gamma_0 >= `floor`.
// gamma_0 = 0 is admitted as the closure point, evaluated with the VaR
// convention for zero-length windows.
struct SimplexPoint {
    std::vector<double> gamma;
    double total = 0.0;
    double floor = 0.0;

    std::size_t n() const { return gamma.empty() ? 0 : gamma.size() - 1; }
    // Throws DomainError when the invariants fail.
    void validate(double tol = 1e-12) const;
};

struct SimplexSearchConfig {
    int gamma0_points = 201;
    int simplex_steps = 200;
    int descent_rounds = 30;
    double shrink = 0.5;
    int workers = 1;
};

struct BoundResult {
    double value = 0.0;
    SimplexPoint witness;
    bool assumption_met = true;
    std::vector<std::string> warnings;
};

// term(i, gamma_i, gamma_0) for the i-th component (0-based). May return +inf.
using WindowTerm = std::function<double(std::size_t, double, double)>;

// Minimizes sum_i term(i, gamma_i, gamma_0) over the scaled simplex.
BoundResult minimize_over_simplex(std::size_t n, double total, double floor, const WindowTerm& term,
                                  const SimplexSearchConfig& cfg = {});

// RVaR of component i over the window of (gamma_i, gamma_0); +inf when divergent.
double simplex_term(const Distribution& d, double gamma_i, double gamma_0);

BoundResult simplex_rvar_bound(std::span<const Distribution> marginals, double beta, double alpha,
                               const SimplexSearchConfig& cfg = {});
BoundResult simplex_var_bound(std::span<const Distribution> marginals, double alpha,
                              const SimplexSearchConfig& cfg = {});

struct MakarovConfig {
    int grid_points = 2001;
    double t_lo = 0.0;
    double t_hi = -1.0;  // negative means 1 - alpha
};

struct MakarovResult {
    double value;
    double t_star;
};

// inf over t of VaR_{alpha+t}(X1) + VaR_{1-t}(X2).
MakarovResult makarov_two(const Distribution& d1, const Distribution& d2, double alpha,
                          const MakarovConfig& cfg = {});

double comonotonic_aggregate(std::span<const Distribution> marginals, const RiskLevels& levels,
                             const QuadratureConfig& cfg = {});

// Columns of equiprobable atoms; one column per risk.
using QuantileMatrix = std::vector<std::vector<double>>;

// Exact max over permutation couplings of the left alpha-quantile of the sum.
double oracle_max_var_discrete(const QuantileMatrix& columns, double alpha);
double oracle_max_var_discrete(std::span<const Distribution> marginals, std::size_t m, double alpha);

struct RearrangementResult {
    double value;
    bool converged;
    int sweeps;
};

// Rearrangement on the rows at or above the alpha-level of each column.
RearrangementResult oracle_rearrangement(const QuantileMatrix& columns, double alpha, int max_sweeps = 1000);

enum class Discretization { lower, upper, midpoint };

// m equiprobable atoms per marginal: Q(k/m), Q((k+1)/m) or Q((k+1/2)/m).
QuantileMatrix quantile_matrix(std::span<const Distribution> marginals, std::size_t m, Discretization how);

// Rows are lines, columns comma separated.
QuantileMatrix read_matrix_csv(const std::string& path);

}  // namespace reinsure
