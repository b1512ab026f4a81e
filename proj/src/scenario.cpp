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

#include "reinsure/scenario.hpp"

#include "reinsure/errors.hpp"

namespace reinsure {

void Scenario::validate() const {
    if (marginals.empty()) throw DomainError("scenario: need at least one insurer");
    if (insurer_levels.size() != marginals.size()) {
        throw DomainError("scenario: one risk level per insurer required");
    }
    auto check_prob = [](double p, const char* what) {
        if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string("scenario: ") + what + " outside (0,1)");
    };
    if (mode == Mode::VaR) {
        for (const RiskLevels& l : insurer_levels) check_prob(l.alpha, "insurer VaR level");
        check_prob(reinsurer_levels.alpha, "reinsurer VaR level");
    } else {
        for (const RiskLevels& l : insurer_levels) {
            l.validate();
            if (!(l.alpha > 0.0) && !(l.beta > 0.0)) throw DomainError("scenario: insurer window is VaR at level 1");
        }
        reinsurer_levels.validate();
        if (!(reinsurer_levels.alpha > 0.0)) throw DomainError("scenario: reinsurer window must have positive length");
    }
}

Scenario Scenario::var_mode(std::vector<Distribution> marginals, std::vector<double> insurer_alphas, double alpha,
                            Dependence dependence) {
    Scenario s;
    s.marginals = std::move(marginals);
    for (double a : insurer_alphas) s.insurer_levels.push_back(RiskLevels{0.0, a});
    s.reinsurer_levels = RiskLevels{0.0, alpha};
    s.mode = Mode::VaR;
    s.dependence = dependence;
    s.validate();
    return s;
}

std::string mode_name(Mode m) { return m == Mode::VaR ? "VaR" : "RVaR"; }

std::string dependence_name(Dependence d) {
    switch (d) {
        case Dependence::WorstCase:
            return "WorstCase";
        case Dependence::Comonotonic:
            return "Comonotonic";
        case Dependence::IID:
            return "IID";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "VaR") return Mode::VaR;
    if (s == "RVaR") return Mode::RVaR;
    throw ConfigError("unknown mode '" + s + "' (expected VaR or RVaR)");
}

Dependence parse_dependence(const std::string& s) {
    if (s == "WorstCase") return Dependence::WorstCase;
    if (s == "Comonotonic") return Dependence::Comonotonic;
    if (s == "IID") return Dependence::IID;
    throw ConfigError("unknown dependence '" + s + "' (expected WorstCase, Comonotonic or IID)");
}

}  // namespace reinsure
