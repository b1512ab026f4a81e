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

#include "reinsure/serialization.hpp"

#include <cmath>
#include <fstream>

#include "reinsure/errors.hpp"

namespace reinsure {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double num(const Json& j, const char* key) { return number_from_json(field(j, key)); }

}  // namespace

Json number_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "Infinity") return kInf;
        if (s == "-inf" || s == "-Infinity") return -kInf;
    }
    throw ConfigError("expected a number, got " + j.dump());
}

Json to_json(const Distribution& d) {
    Json j = std::visit(Overloaded{
                            [](const Lomax& l) { return Json{{"shape", l.shape}, {"scale", l.scale}}; },
                            [](const Exponential& e) { return Json{{"rate", e.rate}}; },
                            [](const Uniform& u) { return Json{{"lo", u.lo}, {"hi", u.hi}}; },
                            [](const PointMass& p) { return Json{{"value", p.value}}; },
                            [](const Normal& n) { return Json{{"mean", n.mean}, {"sd", n.sd}}; },
                            [](const Discrete& q) {
                                Json probs = Json::array();
                                double prev = 0.0;
                                for (double c : q.cumulative) {
                                    probs.push_back(c - prev);
                                    prev = c;
                                }
                                return Json{{"values", q.values}, {"probs", probs}};
                            },
                        },
                        d.law());
    j["family"] = d.family();
    return j;
}

Json to_json(const RiskLevels& l) { return Json{{"beta", l.beta}, {"alpha", l.alpha}}; }

Json to_json(const Scenario& s) {
    Json j;
    j["n"] = s.n();
    j["marginals"] = Json::array();
    for (const Distribution& d : s.marginals) j["marginals"].push_back(to_json(d));
    j["insurer_levels"] = Json::array();
    for (const RiskLevels& l : s.insurer_levels) j["insurer_levels"].push_back(to_json(l));
    j["reinsurer_levels"] = to_json(s.reinsurer_levels);
    j["mode"] = mode_name(s.mode);
    j["dependence"] = dependence_name(s.dependence);
    return j;
}

Json to_json(const Indemnity& f) {
    return std::visit(Overloaded{
                          [](const LayerGB& g) {
                              return Json{{"family", "g"}, {"a", g.a}, {"b", number_to_json(g.b)}};
                          },
                          [](const PropExcessR& r) {
                              return Json{{"family", "r"}, {"a", r.a}, {"b", number_to_json(r.b)}, {"c", r.c}};
                          },
                          [](const CappedPropL& l) {
                              return Json{{"family", "l"}, {"a", l.a}, {"b", number_to_json(l.b)}};
                          },
                          [](const ShiftedPropH& h) {
                              return Json{{"family", "h"}, {"a", h.a}, {"b", number_to_json(h.b)}};
                          },
                          [](const PiecewiseLinear& p) {
                              return Json{{"family", "piecewise"},
                                          {"knots", p.knots},
                                          {"values", p.values},
                                          {"slopes", p.slopes}};
                          },
                      },
                      f.form());
}

Json to_json(const SimplexPoint& g) {
    return Json{{"gamma", g.gamma}, {"total", g.total}, {"floor", g.floor}};
}

Json to_json(const OptimizeResult& r) {
    Json j;
    j["objective_id"] = objective_name(r.objective_id);
    j["objective"] = number_to_json(r.objective);
    j["params"] = Json::array();
    for (const ContractParams& p : r.params) {
        j["params"].push_back(Json{{"a", number_to_json(p.a)}, {"b", number_to_json(p.b)}, {"c", number_to_json(p.c)}});
    }
    j["t_star"] = r.t_star ? Json(*r.t_star) : Json(nullptr);
    j["gamma_star"] = r.gamma_star ? to_json(*r.gamma_star) : Json(nullptr);
    j["flat_intervals"] = Json::array();
    for (const FlatInterval& f : r.flat_intervals) {
        j["flat_intervals"].push_back(Json{{"insurer", f.insurer},
                                           {"param", std::string(1, f.param)},
                                           {"interval", Json::array({number_to_json(f.lo), number_to_json(f.hi)})}});
    }
    j["warnings"] = r.warnings;
    return j;
}

Distribution distribution_from_json(const Json& j) {
    const Json& fam = field(j, "family");
    if (!fam.is_string()) throw ConfigError("marginal family must be a string");
    const std::string f = fam.get<std::string>();
    try {
        if (f == "lomax" || f == "pareto") return Distribution::lomax(num(j, "shape"), num(j, "scale"));
        if (f == "exponential") return Distribution::exponential(num(j, "rate"));
        if (f == "uniform") return Distribution::uniform(num(j, "lo"), num(j, "hi"));
        if (f == "point_mass") return Distribution::point_mass(num(j, "value"));
        if (f == "normal") return Distribution::normal(num(j, "mean"), num(j, "sd"));
        if (f == "discrete") {
            const Json& vs = field(j, "values");
            const Json& ps = field(j, "probs");
            if (!vs.is_array() || !ps.is_array() || vs.size() != ps.size()) {
                throw ConfigError("discrete marginal: values and probs must be arrays of equal length");
            }
            std::vector<Atom> atoms;
            for (std::size_t k = 0; k < vs.size(); ++k) {
                atoms.push_back({number_from_json(vs[k]), number_from_json(ps[k])});
            }
            return Distribution::discrete(std::move(atoms));
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("marginal: ") + e.what());
    }
    throw ConfigError("unknown marginal family '" + f + "'");
}

RiskLevels levels_from_json(const Json& j) {
    RiskLevels l;
    l.beta = j.is_object() && j.contains("beta") ? number_from_json(j.at("beta")) : 0.0;
    l.alpha = num(j, "alpha");
    return l;
}

Scenario scenario_from_json(const Json& j) {
    Scenario s;
    const Json& ms = field(j, "marginals");
    const Json& ls = field(j, "insurer_levels");
    if (!ms.is_array() || !ls.is_array()) throw ConfigError("marginals and insurer_levels must be arrays");
    for (const Json& m : ms) s.marginals.push_back(distribution_from_json(m));
    for (const Json& l : ls) s.insurer_levels.push_back(levels_from_json(l));
    if (j.contains("n") && j.at("n").get<std::size_t>() != s.marginals.size()) {
        throw ConfigError("scenario: n does not match the number of marginals");
    }
    s.reinsurer_levels = levels_from_json(field(j, "reinsurer_levels"));
    s.mode = parse_mode(j.value("mode", std::string("VaR")));
    s.dependence = parse_dependence(j.value("dependence", std::string("WorstCase")));
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError("scenario file '" + path + "': " + e.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const Json::exception& e) {
        throw ConfigError("scenario file '" + path + "': " + e.what());
    }
}

}  // namespace reinsure
