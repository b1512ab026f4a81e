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
#include <cstdint>
#include <span>
#include <vector>

#include "reinsure/contracts.hpp"
#include "reinsure/distribution.hpp"
#include "reinsure/scenario.hpp"

namespace reinsure {

struct AsymptoticScenario {
    std::vector<Distribution> marginals;  // one per insurer
    std::vector<RiskLevels> insurer_levels;
    RiskLevels reinsurer_levels;
    Mode mode = Mode::VaR;

    std::size_t n() const { return marginals.size(); }
    void validate() const;

    static AsymptoticScenario from(const Scenario& s);
    // n insurers sharing one marginal and one level.
    static AsymptoticScenario iid(const Distribution& d, std::size_t n, const RiskLevels& insurer,
                                  const RiskLevels& reinsurer, Mode mode);
};

struct IndemnityMoments {
    double mean;
    double variance;
};

// Exact mean and variance of f(X) from layer integrals of the survival function.
IndemnityMoments indemnity_moments(const Distribution& d, const Indemnity& f);

// (1/alpha) * integral of the standard normal quantile over [1-beta-alpha, 1-beta].
double loading_M(double beta, double alpha);
// Phi^{-1}(alpha) in VaR mode, loading_M otherwise.
double loading(const AsymptoticScenario& s);

double objective_tilde_V(const AsymptoticScenario& s, std::span<const Indemnity> contracts);
double objective_tilde_G(const AsymptoticScenario& s, std::span<const double> a, std::span<const double> b);

struct AStarResult {
    std::vector<double> a;
    std::vector<double> b;
    double objective = 0.0;
    bool converged = true;
    int sweeps = 0;
};

// Retention thresholds for layer contracts capped at VaR_{alpha_i}; VaR mode only.
AStarResult optimal_a_star(const AsymptoticScenario& s);

// Sum of the retention terms plus the normal loading, as a function of retentions
// with caps fixed at VaR_{alpha_i}; VaR mode only.
double retention_objective(const AsymptoticScenario& s, std::span<const double> a);

struct CltConfig {
    std::size_t n = 1;
    std::size_t sample_size = 100000;
    std::uint64_t seed = 0;
    int workers = 1;
};

// Kolmogorov–Smirnov distance between the standardized sum of n i.i.d. f(X)
// and the standard normal law.
double clt_check(const Distribution& d, const Indemnity& f, const CltConfig& cfg);

// Counter-based uniform on (0,1): same (seed, counter) always gives the same value.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

}  // namespace reinsure
