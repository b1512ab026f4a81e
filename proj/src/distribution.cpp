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

#include "reinsure/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reinsure/errors.hpp"
#include "reinsure/normal.hpp"

namespace reinsure {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

// E[(X - k)_+] and E[(X - k)_+^2] for a normal law.
double normal_stop_loss(const Normal& n, double k) {
    const double m = n.mean - k;
    const double z = m / n.sd;
    return m * normal::cdf(z) + n.sd * normal::pdf(z);
}

double normal_stop_loss2(const Normal& n, double k) {
    const double m = n.mean - k;
    const double z = m / n.sd;
    return (m * m + n.sd * n.sd) * normal::cdf(z) + m * n.sd * normal::pdf(z);
}

// Integral of y^(-p) over [ya, yb]; yb may be +inf.
double power_integral(double p, double ya, double yb) {
    if (std::isinf(yb)) {
        if (p <= 1.0) return kInf;
        return std::pow(ya, 1.0 - p) / (p - 1.0);
    }
    if (p == 1.0) return std::log(yb / ya);
    const double e = 1.0 - p;
    // ya^e * (exp(e * log(yb/ya)) - 1) / e, stable for yb close to ya
    return std::pow(ya, e) * std::expm1(e * std::log(yb / ya)) / e;
}

// Breakpoints where the survival function of a finitely supported law is
// piecewise linear.
std::vector<double> survival_breaks(const Distribution::Law& law) {
    return std::visit(Overloaded{
                          [](const Uniform& u) { return std::vector<double>{u.lo, u.hi}; },
                          [](const PointMass& p) { return std::vector<double>{p.value}; },
                          [](const Discrete& d) { return d.values; },
                          [](const auto&) { return std::vector<double>{}; },
                      },
                      law);
}

// Integral of weight(x) * S(x) over [a, b] where S is linear between the
// breaks; two-point Gauss per piece is exact for weights of degree <= 2.
template <class W>
double piecewise_survival_integral(const Distribution& d, double a, double b, W weight) {
    std::vector<double> pts{a};
    for (double x : survival_breaks(d.law())) {
        if (x > a && x < b) pts.push_back(x);
    }
    const double top = survival_breaks(d.law()).back();
    if (std::isinf(b)) {
        if (top > a) pts.push_back(top);
    } else {
        pts.push_back(b);
    }
    static const double g = 1.0 / std::sqrt(3.0);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double lo = pts[k], hi = pts[k + 1];
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (double x : {mid - half * g, mid + half * g}) s += half * weight(x) * d.survival(x);
    }
    return s;
}

}  // namespace

Distribution Distribution::lomax(double shape, double scale) {
    require(shape > 0.0 && std::isfinite(shape), "lomax: shape must be positive");
    require(scale > 0.0 && std::isfinite(scale), "lomax: scale must be positive");
    return Distribution(Lomax{shape, scale});
}

Distribution Distribution::exponential(double rate) {
    require(rate > 0.0 && std::isfinite(rate), "exponential: rate must be positive");
    return Distribution(Exponential{rate});
}

Distribution Distribution::uniform(double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "uniform: need lo < hi");
    return Distribution(Uniform{lo, hi});
}

Distribution Distribution::point_mass(double value) {
    require(std::isfinite(value) && value >= 0.0, "point mass: value must be finite and >= 0");
    return Distribution(PointMass{value});
}

Distribution Distribution::normal(double mean, double sd) {
    require(std::isfinite(mean), "normal: mean must be finite");
    require(sd > 0.0 && std::isfinite(sd), "normal: sd must be positive");
    return Distribution(Normal{mean, sd});
}

Distribution Distribution::discrete(std::vector<Atom> atoms) {
    require(!atoms.empty(), "discrete: no atoms");
    double total = 0.0;
    for (const Atom& a : atoms) {
        require(std::isfinite(a.value) && a.value >= 0.0, "discrete: atom values must be >= 0");
        require(a.prob > 0.0, "discrete: atom probabilities must be positive");
        total += a.prob;
    }
    require(std::abs(total - 1.0) <= 1e-9, "discrete: probabilities must sum to 1");
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom& x, const Atom& y) { return x.value < y.value; });
    Discrete d;
    double run = 0.0;
    for (const Atom& a : atoms) {
        run += a.prob / total;
        if (!d.values.empty() && d.values.back() == a.value) {
            d.cumulative.back() = run;
        } else {
            d.values.push_back(a.value);
            d.cumulative.push_back(run);
        }
    }
    d.cumulative.back() = 1.0;
    return Distribution(std::move(d));
}

Distribution Distribution::equiprobable(std::span<const double> values) {
    require(!values.empty(), "discrete: no atoms");
    std::vector<double> v(values.begin(), values.end());
    for (double x : v) require(std::isfinite(x) && x >= 0.0, "discrete: atom values must be >= 0");
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    Discrete d;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double c = static_cast<double>(k + 1) / m;
        if (!d.values.empty() && d.values.back() == v[k]) {
            d.cumulative.back() = c;
        } else {
            d.values.push_back(v[k]);
            d.cumulative.push_back(c);
        }
    }
    return Distribution(std::move(d));
}

std::string Distribution::family() const {
    return std::visit(Overloaded{
                          [](const Lomax&) { return std::string("lomax"); },
                          [](const Exponential&) { return std::string("exponential"); },
                          [](const Uniform&) { return std::string("uniform"); },
                          [](const PointMass&) { return std::string("point_mass"); },
                          [](const Normal&) { return std::string("normal"); },
                          [](const Discrete&) { return std::string("discrete"); },
                      },
                      law_);
}

double Distribution::cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf: NaN argument");
    return std::visit(Overloaded{
                          [x](const Lomax& l) {
                              if (x <= 0.0) return 0.0;
                              return -std::expm1(-l.shape * std::log1p(x / l.scale));
                          },
                          [x](const Exponential& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x); },
                          [x](const Uniform& u) {
                              if (x <= u.lo) return 0.0;
                              if (x >= u.hi) return 1.0;
                              return (x - u.lo) / (u.hi - u.lo);
                          },
                          [x](const PointMass& p) { return x >= p.value ? 1.0 : 0.0; },
                          [x](const Normal& n) { return normal::cdf((x - n.mean) / n.sd); },
                          [x](const Discrete& d) {
                              auto it = std::upper_bound(d.values.begin(), d.values.end(), x);
                              if (it == d.values.begin()) return 0.0;
                              return d.cumulative[static_cast<std::size_t>(it - d.values.begin()) - 1];
                          },
                      },
                      law_);
}

double Distribution::survival(double x) const {
    return std::visit(Overloaded{
                          [x](const Lomax& l) {
                              if (x <= 0.0) return 1.0;
                              return std::exp(-l.shape * std::log1p(x / l.scale));
                          },
                          [x](const Exponential& e) { return x <= 0.0 ? 1.0 : std::exp(-e.rate * x); },
                          [x](const Normal& n) { return normal::cdf((n.mean - x) / n.sd); },
                          [this, x](const auto&) { return 1.0 - cdf(x); },
                      },
                      law_);
}

double Distribution::quantile(double u) const {
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("quantile: u outside (0,1]");
    return std::visit(Overloaded{
                          [u](const Lomax& l) {
                              if (u == 1.0) return kInf;
                              return l.scale * std::expm1(-std::log1p(-u) / l.shape);
                          },
                          [u](const Exponential& e) {
                              if (u == 1.0) return kInf;
                              return -std::log1p(-u) / e.rate;
                          },
                          [u](const Uniform& un) { return un.lo + u * (un.hi - un.lo); },
                          [](const PointMass& p) { return p.value; },
                          [u](const Normal& n) { return n.mean + n.sd * normal::quantile(u); },
                          [u](const Discrete& d) {
                              auto it = std::lower_bound(d.cumulative.begin(), d.cumulative.end(), u);
                              if (it == d.cumulative.end()) --it;
                              return d.values[static_cast<std::size_t>(it - d.cumulative.begin())];
                          },
                      },
                      law_);
}

double Distribution::quantile_right(double u) const {
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile_right: u outside [0,1)");
    return std::visit(Overloaded{
                          [u](const Discrete& d) {
                              auto it = std::upper_bound(d.cumulative.begin(), d.cumulative.end(), u);
                              if (it == d.cumulative.end()) --it;
                              return d.values[static_cast<std::size_t>(it - d.cumulative.begin())];
                          },
                          [this, u](const auto&) { return quantile_closed(u); },
                      },
                      law_);
}

double Distribution::quantile_closed(double u) const {
    if (u == 0.0) {
        return std::visit(Overloaded{
                              [](const Lomax&) { return 0.0; },
                              [](const Exponential&) { return 0.0; },
                              [](const Uniform& un) { return un.lo; },
                              [](const PointMass& p) { return p.value; },
                              [](const Normal&) { return -kInf; },
                              [](const Discrete& d) { return d.values.front(); },
                          },
                          law_);
    }
    return quantile(u);
}

double Distribution::mean() const {
    return std::visit(Overloaded{
                          [](const Lomax& l) { return l.shape > 1.0 ? l.scale / (l.shape - 1.0) : kInf; },
                          [](const Exponential& e) { return 1.0 / e.rate; },
                          [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                          [](const PointMass& p) { return p.value; },
                          [](const Normal& n) { return n.mean; },
                          [](const Discrete& d) {
                              double s = 0.0, prev = 0.0;
                              for (std::size_t k = 0; k < d.values.size(); ++k) {
                                  s += d.values[k] * (d.cumulative[k] - prev);
                                  prev = d.cumulative[k];
                              }
                              return s;
                          },
                      },
                      law_);
}

double Distribution::variance() const {
    return std::visit(Overloaded{
                          [](const Lomax& l) {
                              if (l.shape <= 2.0) return kInf;
                              const double b = l.shape;
                              return l.scale * l.scale * b / ((b - 1.0) * (b - 1.0) * (b - 2.0));
                          },
                          [](const Exponential& e) { return 1.0 / (e.rate * e.rate); },
                          [](const Uniform& u) { return (u.hi - u.lo) * (u.hi - u.lo) / 12.0; },
                          [](const PointMass&) { return 0.0; },
                          [](const Normal& n) { return n.sd * n.sd; },
                          [this](const Discrete& d) {
                              const double mu = mean();
                              double s = 0.0, prev = 0.0;
                              for (std::size_t k = 0; k < d.values.size(); ++k) {
                                  const double dx = d.values[k] - mu;
                                  s += dx * dx * (d.cumulative[k] - prev);
                                  prev = d.cumulative[k];
                              }
                              return s;
                          },
                      },
                      law_);
}

double Distribution::quantile_integral(double p, double q) const {
    if (!(p >= 0.0 && q <= 1.0 && p <= q)) throw DomainError("quantile_integral: need 0 <= p <= q <= 1");
    if (p == q) return 0.0;
    return std::visit(
        Overloaded{
            [p, q](const Lomax& l) {
                const double len = q - p;
                double head;
                if (q == 1.0) {
                    if (l.shape <= 1.0) return kInf;
                    const double c = 1.0 - 1.0 / l.shape;
                    head = std::pow(1.0 - p, c) / c;
                } else {
                    // log((1-q)/(1-p))
                    const double lr = std::log1p(-len / (1.0 - p));
                    if (l.shape == 1.0) {
                        head = -lr;
                    } else {
                        const double c = 1.0 - 1.0 / l.shape;
                        head = -std::pow(1.0 - p, c) * std::expm1(c * lr) / c;
                    }
                }
                return l.scale * (head - len);
            },
            [p, q](const Exponential& e) {
                auto xlogx = [](double v) { return v <= 0.0 ? 0.0 : v * std::log(v); };
                return (xlogx(1.0 - q) - xlogx(1.0 - p) + (q - p)) / e.rate;
            },
            [p, q](const Uniform& u) { return (q - p) * (u.lo + 0.5 * (u.hi - u.lo) * (p + q)); },
            [p, q](const PointMass& pm) { return pm.value * (q - p); },
            [p, q](const Normal& n) {
                const double phi_p = p == 0.0 ? 0.0 : normal::pdf(normal::quantile(p));
                const double phi_q = q == 1.0 ? 0.0 : normal::pdf(normal::quantile(q));
                return n.mean * (q - p) + n.sd * (phi_p - phi_q);
            },
            [p, q](const Discrete& d) {
                double s = 0.0, prev = 0.0;
                for (std::size_t k = 0; k < d.values.size(); ++k) {
                    const double lo = std::max(prev, p), hi = std::min(d.cumulative[k], q);
                    if (hi > lo) s += d.values[k] * (hi - lo);
                    prev = d.cumulative[k];
                }
                return s;
            },
        },
        law_);
}

double quantile(const Distribution& d, double u) { return d.quantile(u); }

double quantile_right(const Distribution& d, double u) { return d.quantile_right(u); }

double layer_mean(const Distribution& d, double a, double b) {
    if (!(a >= 0.0) || !(b >= a)) throw DomainError("layer_mean: need 0 <= a <= b");
    if (a == b) return 0.0;
    return std::visit(Overloaded{
                          [a, b](const Lomax& l) {
                              const double v = l.scale * power_integral(l.shape, 1.0 + a / l.scale,
                                                                       1.0 + b / l.scale);
                              if (std::isinf(v)) throw DivergenceError("layer_mean: infinite layer mean");
                              return v;
                          },
                          [a, b](const Exponential& e) {
                              const double ea = std::exp(-e.rate * a);
                              return std::isinf(b) ? ea / e.rate : -ea * std::expm1(-e.rate * (b - a)) / e.rate;
                          },
                          [a, b](const Normal& n) {
                              return normal_stop_loss(n, a) - (std::isinf(b) ? 0.0 : normal_stop_loss(n, b));
                          },
                          [&d, a, b](const auto&) {
                              return piecewise_survival_integral(d, a, b, [](double) { return 1.0; });
                          },
                      },
                      d.law());
}

double layer_second_moment_part(const Distribution& d, double a, double b) {
    if (!(a >= 0.0) || !(b >= a)) throw DomainError("layer_second_moment_part: need 0 <= a <= b");
    if (a == b) return 0.0;
    return std::visit(
        Overloaded{
            [a, b](const Lomax& l) {
                const double ya = 1.0 + a / l.scale, yb = 1.0 + b / l.scale;
                const double v = 2.0 * l.scale * l.scale *
                                 (power_integral(l.shape - 1.0, ya, yb) - ya * power_integral(l.shape, ya, yb));
                if (std::isinf(v) || std::isnan(v)) {
                    throw DivergenceError("layer_second_moment_part: infinite second moment");
                }
                return v;
            },
            [a, b](const Exponential& e) {
                const double r = e.rate, ea = std::exp(-r * a);
                if (std::isinf(b)) return 2.0 * ea / (r * r);
                const double t = r * (b - a);
                return 2.0 * ea * (-std::expm1(-t) - t * std::exp(-t)) / (r * r);
            },
            [a, b](const Normal& n) {
                if (std::isinf(b)) return normal_stop_loss2(n, a);
                return normal_stop_loss2(n, a) - normal_stop_loss2(n, b) -
                       2.0 * (b - a) * normal_stop_loss(n, b);
            },
            [&d, a, b](const auto&) {
                return 2.0 * piecewise_survival_integral(d, a, b, [a](double x) { return x - a; });
            },
        },
        d.law());
}

TailShape tail_shape(const Distribution& d, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("tail_shape: alpha outside (0,1)");
    return std::visit(Overloaded{
                          [](const Lomax&) { return TailShape{false, true}; },
                          [](const Exponential&) { return TailShape{false, true}; },
                          [](const Uniform&) { return TailShape{true, true}; },
                          [](const PointMass&) { return TailShape{true, true}; },
                          [alpha](const Normal&) { return TailShape{false, alpha >= 0.5}; },
                          [](const Discrete&) { return TailShape{false, false}; },
                      },
                      d.law());
}

TailShape tail_shape_numeric(const Distribution& d, double alpha, double tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("tail_shape_numeric: alpha outside (0,1)");
    if (d.is_discrete()) return {};
    auto h = [&](double x) { return std::max(d.cdf(x) - alpha, 0.0) / (1.0 - alpha); };
    constexpr int kPoints = 400;
    auto second_differences = [&](double lo, double hi, auto pred) {
        const double step = (hi - lo) / kPoints;
        if (!(step > 0.0)) return true;
        for (int k = 1; k < kPoints; ++k) {
            const double x = lo + k * step;
            if (!pred(h(x - step) - 2.0 * h(x) + h(x + step))) return false;
        }
        return true;
    };
    TailShape out;
    const double x0 = d.quantile_right(alpha);
    const double top = d.quantile(1.0);
    const double hi = std::isinf(top) ? d.quantile(1.0 - (1.0 - alpha) * 1e-6) : top;
    out.concave_beyond = second_differences(x0, hi + (std::isinf(top) ? 0.0 : (hi - x0) + 1.0),
                                            [tol](double s) { return s <= tol; });
    if (!std::isinf(top)) {
        const double lo = d.quantile(alpha) - (top - d.quantile(alpha)) - 1.0;
        // stop one grid step short of the open end
        out.convex_beyond = second_differences(lo, top - (top - lo) / kPoints,
                                               [tol](double s) { return s >= -tol; });
    }
    return out;
}

}  // namespace reinsure
