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

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace reinsure {

// g_{a,b}(x) = (x-a)_+ - (x-b)_+
struct LayerGB {
    double a;
    double b;
};

// r_{a,b,c}(x) = a x + c (x-b)_+
struct PropExcessR {
    double a;
    double b;
    double c;
};

// l_{a,b}(x) = a min(x, b)
struct CappedPropL {
    double a;
    double b;
};

// h_{a,b}(x) = a (x-b)_+
struct ShiftedPropH {
    double a;
    double b;
};

// Knots start at (0, 0); slope[k] applies on [knots[k], knots[k+1]) and the
// last slope on [knots.back(), inf).
struct PiecewiseLinear {
    std::vector<double> knots;
    std::vector<double> values;
    std::vector<double> slopes;
};

class Indemnity {
 public:
    using Form = std::variant<LayerGB, PropExcessR, CappedPropL, ShiftedPropH, PiecewiseLinear>;

    static Indemnity layer(double a, double b);
    static Indemnity prop_excess(double a, double b, double c);
    static Indemnity capped_prop(double a, double b);
    static Indemnity shifted_prop(double a, double b);
    // Knots/values of a continuous function with f(0) = 0; tail_slope applies
    // beyond the last knot.
    static Indemnity piecewise(std::vector<double> knots, std::vector<double> values, double tail_slope);
    static Indemnity zero() { return layer(0.0, 0.0); }
    static Indemnity identity();

    const Form& form() const { return form_; }
    // Normalized piecewise-linear description of the ceded function.
    const PiecewiseLinear& profile() const { return profile_; }
    std::string family() const;

    double evaluate(double x) const;
    double retained(double x) const;
    bool is_convex() const;
    bool is_concave() const;

 private:
    Indemnity(Form form, PiecewiseLinear profile) : form_(std::move(form)), profile_(std::move(profile)) {}
    Form form_;
    PiecewiseLinear profile_;
};

// Evaluates a profile, treating 0 * inf as 0. Below 0 the first piece is
// extended linearly, which only matters for laws with negative support.
double evaluate_profile(const PiecewiseLinear& p, double x);
// Profile of x - f(x).
PiecewiseLinear retained_profile(const PiecewiseLinear& p);

enum class AdmissibleDomain { A1, A2, A3, A4 };

struct ContractParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct Admissibility {
    bool accepted = true;
    std::string reason;
    explicit operator bool() const { return accepted; }
};

Admissibility check_admissible(std::span<const ContractParams> params, AdmissibleDomain domain);
Admissibility check_admissible(const ContractParams& params, AdmissibleDomain domain);

// A1 -> g, A2 -> r, A3 -> l, A4 -> h. Throws DomainError when inadmissible.
Indemnity make_contract(AdmissibleDomain domain, const ContractParams& p);

std::string domain_name(AdmissibleDomain d);

}  // namespace reinsure
