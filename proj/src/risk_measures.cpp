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

#include "reinsure/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "reinsure/errors.hpp"
#include "reinsure/kernels.hpp"
#include "reinsure/quadrature.hpp"

namespace reinsure {

namespace {

constexpr double kLevelSlack = 1e-12;

struct Segment {
    double x0;     // anchor knot
    double u_lo;   // F at the left end
    double u_hi;   // F at the right end
    double value;  // h(x0)
    double slope;
};

double eval_segment(const Segment& s, double x) {
    if (s.slope == 0.0) return s.value;
    return s.value + s.slope * (x - s.x0);
}

std::vector<Segment> segments(const Distribution& d, const PiecewiseLinear& f, Side side) {
    std::vector<Segment> out;
    const bool ceded = side == Side::ceded;
    const double f0 = d.cdf(0.0);
    const double s0 = f.slopes.front();
    out.push_back({0.0, 0.0, f0, 0.0, ceded ? s0 : 1.0 - s0});
    for (std::size_t k = 0; k < f.knots.size(); ++k) {
        const double x = f.knots[k];
        const double u_lo = k == 0 ? f0 : d.cdf(x);
        const double u_hi = k + 1 < f.knots.size() ? d.cdf(f.knots[k + 1]) : 1.0;
        const double v = ceded ? f.values[k] : x - f.values[k];
        const double s = ceded ? f.slopes[k] : 1.0 - f.slopes[k];
        out.push_back({x, u_lo, u_hi, v, s});
    }
    return out;
}

// Integral of Q over [lo, hi] by Gauss–Legendre; graded near u = 1 when the
// quantile is unbounded there.
template <class H>
double gl_integral(const Distribution& d, H h, double lo, double hi, int nodes) {
    const GaussLegendre& rule = gauss_legendre(nodes);
    std::vector<double> t, w;
    rule.map(0.0, 1.0, t, w);
    const bool graded = hi == 1.0 && std::isinf(d.quantile(1.0));
    std::vector<double> vals(t.size()), wts(t.size());
    const double len = hi - lo;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (graded) {
            const double r = 1.0 - t[k];
            vals[k] = h(d.quantile(std::min(lo + len * (1.0 - r * r * r), std::nextafter(1.0, 0.0))));
            wts[k] = w[k] * 3.0 * len * r * r;
        } else {
            vals[k] = h(d.quantile(lo + len * t[k]));
            wts[k] = w[k] * len;
        }
    }
    return kernels::dot(wts, vals);
}

double clamp_level(double u) {
    if (u < -kLevelSlack || u > 1.0 + kLevelSlack) throw DomainError("risk level outside [0,1]");
    return std::clamp(u, 0.0, 1.0);
}

}  // namespace

double RiskLevels::lower() const { return std::max(0.0, 1.0 - beta - alpha); }

void RiskLevels::validate() const {
    if (!(beta >= 0.0) || !(alpha >= 0.0) || beta + alpha > 1.0 + kLevelSlack) {
        throw DomainError("risk levels: need beta, alpha >= 0 and beta + alpha <= 1");
    }
}

double var(const Distribution& d, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("var: level outside (0,1]");
    return d.quantile(p);
}

double rvar(const Distribution& d, const RiskLevels& levels, const QuadratureConfig& cfg) {
    levels.validate();
    const double hi = clamp_level(levels.upper());
    if (levels.is_var()) return var(d, hi);
    const double lo = levels.lower();
    double integral;
    if (cfg.method == IntegrationMethod::gauss_legendre && !d.is_discrete()) {
        integral = gl_integral(d, [](double q) { return q; }, lo, hi, cfg.nodes);
    } else {
        integral = d.quantile_integral(lo, hi);
    }
    if (!std::isfinite(integral)) throw DivergenceError("rvar: infinite quantile integral");
    return integral / (hi - lo);
}

double es(const Distribution& d, double a, const QuadratureConfig& cfg) {
    if (!(a >= 0.0 && a < 1.0)) throw DomainError("es: level outside [0,1)");
    return rvar(d, RiskLevels::es(a), cfg);
}

double window_average(const Distribution& d, const PiecewiseLinear& f, Side side, double lo, double hi,
                      const QuadratureConfig& cfg) {
    lo = clamp_level(lo);
    hi = clamp_level(hi);
    if (lo > hi) throw DomainError("window_average: empty window");
    const std::vector<Segment> segs = segments(d, f, side);
    if (lo == hi) {
        if (hi == 0.0) throw DomainError("window_average: level 0");
        const double q = d.quantile(hi);
        if (q <= 0.0) return eval_segment(segs[0], q);
        auto it = std::upper_bound(f.knots.begin(), f.knots.end(), q);
        const auto k = static_cast<std::size_t>(it - f.knots.begin());
        return eval_segment(segs[k], q);
    }
    double total = 0.0;
    for (const Segment& s : segs) {
        const double a = std::max(lo, s.u_lo), b = std::min(hi, s.u_hi);
        if (!(b > a)) continue;
        const double len = b - a;
        if (s.slope == 0.0) {
            total += s.value * len;
            continue;
        }
        double qi;
        if (cfg.method == IntegrationMethod::gauss_legendre && !d.is_discrete()) {
            qi = gl_integral(d, [](double q) { return q; }, a, b, cfg.nodes);
        } else {
            qi = d.quantile_integral(a, b);
        }
        if (!std::isfinite(qi)) throw DivergenceError("risk measure of contract: infinite integral");
        total += s.value * len + s.slope * (qi - s.x0 * len);
    }
    return total / (hi - lo);
}

double measure_of_contract(const Distribution& d, const Indemnity& f, const RiskLevels& levels, Side side,
                           const QuadratureConfig& cfg) {
    levels.validate();
    const double hi = clamp_level(levels.upper());
    const double lo = levels.is_var() ? hi : levels.lower();
    return window_average(d, f.profile(), side, lo, hi, cfg);
}

}  // namespace reinsure
