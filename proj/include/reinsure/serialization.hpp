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

#include <string>

#include <json.hpp>

#include "reinsure/contracts.hpp"
#include "reinsure/distribution.hpp"
#include "reinsure/objectives.hpp"
#include "reinsure/scenario.hpp"

namespace reinsure {

using Json = nlohmann::json;

// Infinite values travel as the strings "inf" / "-inf".
Json number_to_json(double v);
double number_from_json(const Json& j);

Json to_json(const Distribution& d);
Json to_json(const RiskLevels& l);
Json to_json(const Scenario& s);
Json to_json(const Indemnity& f);
Json to_json(const SimplexPoint& g);
Json to_json(const OptimizeResult& r);

// All parsers throw ConfigError on malformed input.
Distribution distribution_from_json(const Json& j);
RiskLevels levels_from_json(const Json& j);
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);

}  // namespace reinsure
