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

#include "reinsure/contracts.hpp"
#include "reinsure/distribution.hpp"

namespace reinsure {

// RVaR_{beta,alpha}: average of the left quantile over [1-beta-alpha, 1-beta].
// alpha = 0 is VaR_{1-beta}.
struct RiskLevels {
    double beta = 0.0;
    double alpha = 0.0;

    static RiskLevels es(double a) { return {0.0, 1.0 - a}; }
    bool is_var() const { return alpha == 0.0; }
    double lower() const;
    double upper() const { return 1.0 - beta; }
    // Throws DomainError unless beta, alpha >= 0 and beta + alpha <= 1.
    void validate() const;
};

enum class Side { ceded, retained };

enum class IntegrationMethod { closed_form, gauss_legendre };

struct QuadratureConfig {
    IntegrationMethod method = IntegrationMethod::closed_form;
    int nodes = 256;
};

double var(const Distribution& d, double p);
double rvar(const Distribution& d, const RiskLevels& levels, const QuadratureConfig& cfg = {});
double es(const Distribution& d, double a, const QuadratureConfig& cfg = {});

double measure_of_contract(const Distribution& d, const Indemnity& f, const RiskLevels& levels, Side side,
                           const QuadratureConfig& cfg = {});

// Average over u in [lo, hi] of f(Q(u)) (ceded) or Q(u) - f(Q(u)) (retained);
// lo == hi gives the value at Q(hi).
double window_average(const Distribution& d, const PiecewiseLinear& f, Side side, double lo, double hi,
                      const QuadratureConfig& cfg = {});

}  // namespace reinsure
