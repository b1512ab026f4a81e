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

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace reinsure {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Lomax {
    double shape;
    double scale;
};

struct Exponential {
    double rate;
};

struct Uniform {
    double lo;
    double hi;
};

struct PointMass {
    double value;
};

struct Normal {
    double mean;
    double sd;
};

struct Atom {
    double value;
    double prob;
};

struct Discrete {
    std::vector<double> values;      // strictly increasing
    std::vector<double> cumulative;  // F at each value, last entry exactly 1
};

struct TailShape {
    bool convex_beyond = false;
    bool concave_beyond = false;
};

class Distribution {
 public:
    using Law = std::variant<Lomax, Exponential, Uniform, PointMass, Normal, Discrete>;

    static Distribution lomax(double shape, double scale);
    static Distribution exponential(double rate);
    static Distribution uniform(double lo, double hi);
    static Distribution point_mass(double value);
    static Distribution normal(double mean, double sd);
    // Atoms are sorted and equal values merged; probabilities must sum to 1.
    static Distribution discrete(std::vector<Atom> atoms);
    static Distribution equiprobable(std::span<const double> values);

    const Law& law() const { return law_; }
    std::string family() const;
    bool is_discrete() const { return std::holds_alternative<Discrete>(law_); }

    double cdf(double x) const;
    double survival(double x) const;
    // Left quantile, u in (0,1].
    double quantile(double u) const;
    // Right quantile, u in [0,1).
    double quantile_right(double u) const;
    double mean() const;
    double variance() const;

    // Integral of the left quantile over [p, q], 0 <= p <= q <= 1. May be +inf.
    double quantile_integral(double p, double q) const;

    // Left quantile extended to u = 0 as the lower support end.
    double quantile_closed(double u) const;

 private:
    explicit Distribution(Law law) : law_(std::move(law)) {}
    Law law_;
};

double quantile(const Distribution& d, double u);
double quantile_right(const Distribution& d, double u);

// Integral of the survival function over [a, b]; b may be +inf.
double layer_mean(const Distribution& d, double a, double b);
// 2 * integral of (x - a) * survival(x) over [a, b].
double layer_second_moment_part(const Distribution& d, double a, double b);

TailShape tail_shape(const Distribution& d, double alpha);
// Second-difference test of (F(x) - alpha)_+ / (1 - alpha) beyond the right alpha-quantile.
TailShape tail_shape_numeric(const Distribution& d, double alpha, double tol = 1e-9);

}  // namespace reinsure
