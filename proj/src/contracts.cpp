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

#include "reinsure/contracts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reinsure/errors.hpp"

namespace reinsure {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Builds a profile from (knot, slope) pairs starting at 0. Infinite and
// repeated knots are dropped.
PiecewiseLinear build(std::vector<std::pair<double, double>> pieces) {
    PiecewiseLinear p;
    for (const auto& [x, s] : pieces) {
        if (std::isinf(x)) break;
        if (!p.knots.empty() && x <= p.knots.back()) {
            p.slopes.back() = s;
            continue;
        }
        const double y = p.knots.empty()
                             ? 0.0
                             : p.values.back() + (p.slopes.back() == 0.0
                                                      ? 0.0
                                                      : p.slopes.back() * (x - p.knots.back()));
        p.knots.push_back(x);
        p.values.push_back(y);
        p.slopes.push_back(s);
    }
    return p;
}

bool is_prob(double v) { return v >= 0.0 && v <= 1.0; }

Admissibility reject(std::string why) { return {false, std::move(why)}; }

}  // namespace

double evaluate_profile(const PiecewiseLinear& p, double x) {
    if (std::isnan(x)) throw DomainError("indemnity: NaN argument");
    if (x <= 0.0) return p.slopes.front() == 0.0 ? 0.0 : p.slopes.front() * x;
    auto it = std::upper_bound(p.knots.begin(), p.knots.end(), x);
    const auto k = static_cast<std::size_t>(it - p.knots.begin()) - 1;
    const double s = p.slopes[k];
    return s == 0.0 ? p.values[k] : p.values[k] + s * (x - p.knots[k]);
}

PiecewiseLinear retained_profile(const PiecewiseLinear& p) {
    PiecewiseLinear r = p;
    for (std::size_t k = 0; k < p.knots.size(); ++k) {
        r.values[k] = p.knots[k] - p.values[k];
        r.slopes[k] = 1.0 - p.slopes[k];
    }
    return r;
}

Indemnity Indemnity::layer(double a, double b) {
    if (auto ok = check_admissible(ContractParams{a, b, 0.0}, AdmissibleDomain::A1); !ok) {
        throw DomainError("layer contract: " + ok.reason);
    }
    return Indemnity(LayerGB{a, b}, build({{0.0, 0.0}, {a, a < b ? 1.0 : 0.0}, {b, 0.0}}));
}

Indemnity Indemnity::prop_excess(double a, double b, double c) {
    if (auto ok = check_admissible(ContractParams{a, b, c}, AdmissibleDomain::A2); !ok) {
        throw DomainError("proportional-excess contract: " + ok.reason);
    }
    return Indemnity(PropExcessR{a, b, c}, build({{0.0, a}, {b, a + c}}));
}

Indemnity Indemnity::capped_prop(double a, double b) {
    if (auto ok = check_admissible(ContractParams{a, b, 0.0}, AdmissibleDomain::A3); !ok) {
        throw DomainError("capped proportional contract: " + ok.reason);
    }
    return Indemnity(CappedPropL{a, b}, build({{0.0, a}, {b, 0.0}}));
}

Indemnity Indemnity::shifted_prop(double a, double b) {
    if (auto ok = check_admissible(ContractParams{a, b, 0.0}, AdmissibleDomain::A4); !ok) {
        throw DomainError("shifted proportional contract: " + ok.reason);
    }
    return Indemnity(ShiftedPropH{a, b}, build({{0.0, 0.0}, {b, a}}));
}

Indemnity Indemnity::identity() { return layer(0.0, kInf); }

Indemnity Indemnity::piecewise(std::vector<double> knots, std::vector<double> values, double tail_slope) {
    if (knots.empty() || knots.size() != values.size()) {
        throw DomainError("piecewise contract: knots and values must be nonempty and equal length");
    }
    if (knots.front() != 0.0 || values.front() != 0.0) {
        throw DomainError("piecewise contract: must start at (0, 0)");
    }
    if (!is_prob(tail_slope)) throw DomainError("piecewise contract: tail slope outside [0,1]");
    std::vector<std::pair<double, double>> pieces;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double dx = knots[k + 1] - knots[k];
        if (!(dx > 0.0) || !std::isfinite(knots[k + 1])) {
            throw DomainError("piecewise contract: knots must be finite and strictly increasing");
        }
        double s = (values[k + 1] - values[k]) / dx;
        if (s < -1e-12 || s > 1.0 + 1e-12) throw DomainError("piecewise contract: slope outside [0,1]");
        pieces.emplace_back(knots[k], std::clamp(s, 0.0, 1.0));
    }
    pieces.emplace_back(knots.back(), tail_slope);
    PiecewiseLinear prof = build(pieces);
    // keep the caller's knot values exactly
    prof.values = values;
    PiecewiseLinear form{std::move(knots), std::move(values), {}};
    form.slopes = prof.slopes;
    return Indemnity(std::move(form), std::move(prof));
}

std::string Indemnity::family() const {
    switch (form_.index()) {
        case 0:
            return "g";
        case 1:
            return "r";
        case 2:
            return "l";
        case 3:
            return "h";
        default:
            return "piecewise";
    }
}

double Indemnity::evaluate(double x) const {
    if (x < 0.0) throw DomainError("indemnity: negative loss");
    return evaluate_profile(profile_, x);
}

double Indemnity::retained(double x) const {
    if (x < 0.0) throw DomainError("indemnity: negative loss");
    if (std::isinf(x)) {
        // x - f(x) at infinity: finite only when the tail slope is 1
        const double s = profile_.slopes.back();
        return s == 1.0 ? profile_.knots.back() - profile_.values.back() : kInf;
    }
    return x - evaluate_profile(profile_, x);
}

bool Indemnity::is_convex() const {
    return std::is_sorted(profile_.slopes.begin(), profile_.slopes.end());
}

bool Indemnity::is_concave() const {
    return std::is_sorted(profile_.slopes.rbegin(), profile_.slopes.rend());
}

Admissibility check_admissible(const ContractParams& p, AdmissibleDomain domain) {
    const double a = p.a, b = p.b, c = p.c;
    if (std::isnan(a) || std::isnan(b) || std::isnan(c)) return reject("NaN parameter");
    switch (domain) {
        case AdmissibleDomain::A1:
            if (a < 0.0) return reject("a < 0");
            if (std::isinf(a)) return reject("a must be finite");
            if (a > b) return reject("a > b");
            return {};
        case AdmissibleDomain::A2:
            if (a < 0.0) return reject("a < 0");
            if (c < 0.0) return reject("c < 0");
            if (a + c > 1.0) return reject("a + c > 1");
            if (b < 0.0) return reject("b < 0");
            return {};
        case AdmissibleDomain::A3:
        case AdmissibleDomain::A4:
            if (!is_prob(a)) return reject(a < 0.0 ? "a < 0" : "a > 1");
            if (b < 0.0) return reject("b < 0");
            return {};
    }
    return reject("unknown domain");
}

Admissibility check_admissible(std::span<const ContractParams> params, AdmissibleDomain domain) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (auto ok = check_admissible(params[i], domain); !ok) {
            return reject("insurer " + std::to_string(i + 1) + ": " + ok.reason);
        }
    }
    return {};
}

Indemnity make_contract(AdmissibleDomain domain, const ContractParams& p) {
    switch (domain) {
        case AdmissibleDomain::A1:
            return Indemnity::layer(p.a, p.b);
        case AdmissibleDomain::A2:
            return Indemnity::prop_excess(p.a, p.b, p.c);
        case AdmissibleDomain::A3:
            return Indemnity::capped_prop(p.a, p.b);
        case AdmissibleDomain::A4:
            return Indemnity::shifted_prop(p.a, p.b);
    }
    throw DomainError("unknown domain");
}

std::string domain_name(AdmissibleDomain d) {
    switch (d) {
        case AdmissibleDomain::A1:
            return "A1";
        case AdmissibleDomain::A2:
            return "A2";
        case AdmissibleDomain::A3:
            return "A3";
        case AdmissibleDomain::A4:
            return "A4";
    }
    return "?";
}

}  // namespace reinsure
