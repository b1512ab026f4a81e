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
#include <string>
#include <vector>

#include "reinsure/distribution.hpp"
#include "reinsure/risk_measures.hpp"

namespace reinsure {

enum class Mode { RVaR, VaR };
enum class Dependence { WorstCase, Comonotonic, IID };

// In VaR mode every RiskLevels carries its probability level in `alpha`;
// `beta` is ignored.
struct Scenario {
    std::vector<Distribution> marginals;
    std::vector<RiskLevels> insurer_levels;
    RiskLevels reinsurer_levels;
    Mode mode = Mode::VaR;
    Dependence dependence = Dependence::WorstCase;

    std::size_t n() const { return marginals.size(); }
    // VaR-mode probability levels.
    double insurer_level(std::size_t i) const { return insurer_levels.at(i).alpha; }
    double reinsurer_level() const { return reinsurer_levels.alpha; }
    // Throws DomainError on inconsistent sizes or invalid levels.
    void validate() const;

    static Scenario var_mode(std::vector<Distribution> marginals, std::vector<double> insurer_alphas,
                             double alpha, Dependence dependence);
};

std::string mode_name(Mode m);
std::string dependence_name(Dependence d);
Mode parse_mode(const std::string& s);
Dependence parse_dependence(const std::string& s);

}  // namespace reinsure
