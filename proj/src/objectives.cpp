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

#include "reinsure/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "reinsure/asymptotic.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/kernels.hpp"
#include "reinsure/parallel.hpp"
#include "reinsure/risk_measures.hpp"
#include "reinsure/search.hpp"

namespace reinsure {

namespace {

constexpr double kLevelTol = 1e-9;
constexpr double kTinyLevel = std::numeric_limits<double>::min();

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

void require_mode(const Scenario& s, Mode m, const std::string& who) {
    require(s.mode == m, who + ": scenario must be in " + mode_name(m) + " mode");
}

void require_admissible(std::span<const ContractParams> p, AdmissibleDomain d, const std::string& who) {
    const Admissibility ok = check_admissible(p, d);
    if (!ok) throw DomainError(who + ": " + ok.reason);
}

std::vector<ContractParams> pack(std::span<const double> a, std::span<const double> b, std::size_t n,
                                 const std::string& who) {
    require(a.size() == n && b.size() == n, who + ": one (a, b) per insurer");
    std::vector<ContractParams> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = {a[i], b[i], 0.0};
    return p;
}

// Loss-space value of probability coordinate u, floored at 0.
double loss_at(const Distribution& d, double u) {
    if (u <= 0.0) return std::max(0.0, d.quantile_closed(0.0));
    return std::max(0.0, d.quantile(std::min(u, 1.0)));
}

double layered(double x, double a, double b) {
    double d = x - a;
    d = d > 0.0 ? d : 0.0;
    const double l = b - a;
    return d < l ? d : l;
}

// Insurer term: the retained part under the insurer's levels.
double insurer_term(const Scenario& s, std::size_t i, const PiecewiseLinear& f) {
    const Distribution& d = s.marginals[i];
    if (s.mode == Mode::VaR) {
        const double p = s.insurer_level(i);
        return window_average(d, f, Side::retained, p, p);
    }
    const RiskLevels& lv = s.insurer_levels[i];
    const double hi = lv.upper();
    return window_average(d, f, Side::retained, lv.is_var() ? hi : lv.lower(), hi);
}

// RVaR_{gamma_i, gamma_0} of the ceded loss; gamma_0 = 0 is the VaR at 1 - gamma_i.
double gamma_window(const Distribution& d, const PiecewiseLinear& f, double gi, double g0) {
    const double hi = std::clamp(1.0 - gi, kTinyLevel, 1.0);
    if (g0 <= 0.0) return window_average(d, f, Side::ceded, hi, hi);
    return window_average(d, f, Side::ceded, std::clamp(1.0 - gi - g0, 0.0, hi), hi);
}

double gamma_term(const Distribution& d, const PiecewiseLinear& f, double gi, double g0) {
    try {
        return gamma_window(d, f, gi, g0);
    } catch (const DivergenceError&) {
        return kInf;
    }
}

void check_gamma(const Scenario& s, const SimplexPoint& g, double total, double floor, const std::string& who) {
    g.validate();
    require(g.n() == s.n(), who + ": gamma has the wrong dimension");
    require(std::abs(g.total - total) <= kLevelTol, who + ": gamma total does not match the levels");
    require(g.gamma[0] >= floor - 1e-12, who + ": gamma_0 below its floor");
}

double gamma_objective(const Scenario& s, std::span<const Indemnity> fs, const SimplexPoint& g) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        total += insurer_term(s, i, fs[i].profile()) + gamma_window(s.marginals[i], fs[i].profile(), g.gamma[i + 1], g.gamma[0]);
    }
    return total;
}

double var_total(const Scenario& s) { return 1.0 - s.reinsurer_level(); }

double rvar_total(const Scenario& s) { return s.reinsurer_levels.beta + s.reinsurer_levels.alpha; }

// ---------------------------------------------------------------------------
// K and its inner t problem

struct KContext {
    const Scenario& s;
    bool worst;
    double alpha;
    std::vector<double> qa;
    std::vector<double> ts, x, y;
    bool boundary = false;
    std::optional<AsymptoticScenario> asym;

    KContext(const Scenario& sc, bool worst_case, const SearchConfig& cfg)
        : s(sc), worst(worst_case), alpha(sc.reinsurer_level()) {
        require_mode(s, Mode::VaR, "objective K");
        qa = reduce_caps(s);
        if (s.n() == 1) return;
        if (!worst && s.dependence == Dependence::IID) {
            asym = AsymptoticScenario::from(s);
            return;
        }
        if (!worst) return;
        require(s.n() == 2, "objective K: the worst-case regime needs n <= 2");
        require(alpha > 0.0 && alpha < 1.0, "objective K: reinsurer level outside (0,1)");
        boundary = cfg.shortcuts && boundary_t_certificate(s).boundary_only;
        const double top = 1.0 - alpha;
        if (boundary) {
            ts = {0.0, top};
        } else {
            const std::size_t m = static_cast<std::size_t>(std::max(cfg.t_points, 2));
            ts.resize(m);
            for (std::size_t k = 0; k < m; ++k) {
                ts[k] = k + 1 == m ? top : top * static_cast<double>(k) / static_cast<double>(m - 1);
            }
        }
        x.resize(ts.size());
        y.resize(ts.size());
        for (std::size_t k = 0; k < ts.size(); ++k) {
            x[k] = s.marginals[0].quantile(std::min(alpha + ts[k], 1.0));
            y[k] = s.marginals[1].quantile(std::max(1.0 - ts[k], alpha));
        }
    }

    double pair_at(std::span<const double> a, std::span<const double> b, double t) const {
        return layered(s.marginals[0].quantile(std::min(alpha + t, 1.0)), a[0], b[0]) +
               layered(s.marginals[1].quantile(std::max(1.0 - t, alpha)), a[1], b[1]);
    }

    InnerT eval(std::span<const double> a, std::span<const double> b, bool refine) const {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        double retained = 0.0;
        for (std::size_t i = 0; i < s.n(); ++i) retained += qa[i] - layered(qa[i], a[i], b[i]);
        if (s.n() == 1) return {retained + layered(s.marginals[0].quantile(alpha), a[0], b[0]), nan};
        if (asym) return {objective_tilde_G(*asym, a, b), nan};
        if (!worst) {
            double ceded = 0.0;
            for (std::size_t i = 0; i < s.n(); ++i) ceded += layered(s.marginals[i].quantile(alpha), a[i], b[i]);
            return {retained + ceded, nan};
        }
        const kernels::MinIndex m = kernels::min_layered_pair_sum(
            x, y, kernels::Layer{a[0], b[0] - a[0]}, kernels::Layer{a[1], b[1] - a[1]});
        double best = m.value, t = ts[m.index];
        if (refine && !boundary && ts.size() > 2) {
            const std::size_t k = m.index;
            const double lo = ts[k == 0 ? 0 : k - 1], hi = ts[std::min(k + 1, ts.size() - 1)];
            const Point1D p = golden_section([&](double u) { return pair_at(a, b, u); }, lo, hi);
            if (p.value < best && !ties_with(p.value, best)) {
                best = p.value;
                t = p.x;
            }
        }
        return {retained + best, t};
    }
};

// ---------------------------------------------------------------------------
// Generic deterministic box search

struct Box {
    std::vector<double> lo, hi;
    std::vector<std::size_t> points;
};

using Eval = std::function<double(const std::vector<double>&)>;

double grid_coord(const Box& box, std::size_t i, std::size_t k) {
    const std::size_t p = box.points[i];
    if (p <= 1 || !(box.hi[i] > box.lo[i])) return box.lo[i];
    if (k + 1 == p) return box.hi[i];
    return box.lo[i] + (box.hi[i] - box.lo[i]) * static_cast<double>(k) / static_cast<double>(p - 1);
}

double spacing(const Box& box, std::size_t i) {
    if (box.points[i] <= 1) return 0.0;
    return (box.hi[i] - box.lo[i]) / static_cast<double>(box.points[i] - 1);
}

std::vector<double> decode(const Box& box, std::size_t idx) {
    const std::size_t dims = box.lo.size();
    std::vector<double> x(dims);
    for (std::size_t i = dims; i-- > 0;) {
        x[i] = grid_coord(box, i, idx % box.points[i]);
        idx /= box.points[i];
    }
    return x;
}

struct BoxBest {
    std::vector<double> x;
    double value;
};

BoxBest box_search(const Box& box, const Eval& coarse, const Eval& fine, const SearchConfig& cfg) {
    std::size_t total = 1;
    for (std::size_t p : box.points) total *= p;
    std::vector<double> values = parallel_map(total, cfg.workers, [&](std::size_t idx) {
        const double v = coarse(decode(box, idx));
        return std::isnan(v) ? kInf : v;
    });
    const std::size_t k = first_min_index(values);
    if (!std::isfinite(values[k])) throw DivergenceError("minimize: objective is infinite on the whole grid");
    BoxBest best{decode(box, k), 0.0};
    best.value = fine(best.x);

    const std::size_t dims = box.lo.size();
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        std::vector<double> h(dims);
        for (std::size_t i = 0; i < dims; ++i) h[i] = spacing(box, i);
        for (int level = 0; level <= cfg.halvings; ++level) {
            for (int guard = 0; guard < 64; ++guard) {
                bool moved = false;
                for (std::size_t i = 0; i < dims && !moved; ++i) {
                    if (!(h[i] > 0.0)) continue;
                    for (double dir : {-1.0, 1.0}) {
                        std::vector<double> cand = best.x;
                        cand[i] = std::clamp(cand[i] + dir * h[i], box.lo[i], box.hi[i]);
                        if (cand[i] == best.x[i]) continue;
                        const double v = fine(cand);
                        if (v < best.value && !ties_with(v, best.value)) {
                            best = {std::move(cand), v};
                            moved = true;
                            break;
                        }
                    }
                }
                if (!moved) break;
            }
            for (double& hi : h) hi *= 0.5;
        }
    }
    return best;
}

// Largest interval around x0 inside [lo, hi] on which f stays within tol of opt,
// found by stepping outward and bisecting the first failing step.
std::pair<double, double> flat_range(const std::function<double(double)>& f, double x0, double lo, double hi,
                                     double step, double opt, double tol) {
    auto ok = [&](double x) { return std::abs(f(x) - opt) <= tol; };
    auto march = [&](bool down, double bound) {
        double good = x0;
        if (!(step > 0.0)) return good;
        while (good != bound) {
            const double cand = down ? std::max(bound, good - step) : std::min(bound, good + step);
            if (ok(cand)) {
                good = cand;
                continue;
            }
            double bad = cand;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (good + bad);
                if (mid == good || mid == bad) break;
                if (ok(mid)) {
                    good = mid;
                } else {
                    bad = mid;
                }
            }
            break;
        }
        return good;
    };
    return {march(true, lo), march(false, hi)};
}

Point1D search_1d(const std::function<double(double)>& f, double lo, double hi, int points) {
    if (!(hi > lo)) return {lo, f(lo)};
    const std::size_t m = static_cast<std::size_t>(std::max(points, 3));
    std::vector<double> xs(m), vs(m);
    for (std::size_t k = 0; k < m; ++k) {
        xs[k] = k + 1 == m ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m - 1);
        vs[k] = f(xs[k]);
        if (std::isnan(vs[k])) vs[k] = kInf;
    }
    const std::size_t k = first_min_index(vs);
    Point1D best{xs[k], vs[k]};
    if (!std::isfinite(best.value)) return best;
    const Point1D p = golden_section(f, xs[k == 0 ? 0 : k - 1], xs[std::min(k + 1, m - 1)]);
    if (p.value < best.value && !ties_with(p.value, best.value)) best = p;
    return best;
}

std::size_t points_per_dim(const SearchConfig& cfg, std::size_t dims) {
    const double root = std::pow(static_cast<double>(cfg.max_grid_evaluations), 1.0 / static_cast<double>(dims));
    auto p = static_cast<std::size_t>(std::floor(root + 1e-9));
    p = std::min<std::size_t>(p, static_cast<std::size_t>(cfg.grid_points));
    return std::max<std::size_t>(p, 2);
}

void validate_config(const SearchConfig& cfg) {
    if (cfg.grid_points < 2 || cfg.t_points < 2 || cfg.inner_points < 3) {
        throw ConfigError("search config: grid sizes too small");
    }
    if (cfg.refine_rounds < 0 || cfg.halvings < 0 || !(cfg.flat_tolerance >= 0.0) || cfg.max_grid_evaluations < 4) {
        throw ConfigError("search config: invalid refinement settings");
    }
    if (cfg.workers < 1) throw ConfigError("search config: workers must be >= 1");
}

void require_continuous(const Scenario& s) {
    for (const Distribution& d : s.marginals) {
        require(!d.is_discrete(), "minimize: discrete marginals are not supported by the solvers");
    }
}

// ---------------------------------------------------------------------------
// Minimizers

OptimizeResult minimize_k(ObjectiveId id, const Scenario& s, const SearchConfig& cfg) {
    require_mode(s, Mode::VaR, "minimize " + objective_name(id));
    const bool worst = id == ObjectiveId::G1bar || s.dependence == Dependence::WorstCase;
    if (id == ObjectiveId::G1bar) require(s.n() == 2, "minimize G1bar: n must be 2");
    Scenario sk = s;
    if (worst) sk.dependence = Dependence::WorstCase;
    const std::size_t n = s.n();
    const std::vector<double> caps = reduce_caps(s);
    const double alpha = s.reinsurer_level();

    OptimizeResult r;
    r.objective_id = id;
    double max_level = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_level = std::max(max_level, s.insurer_level(i));
    const bool no_gain = alpha >= max_level &&
                         (n == 1 || worst || s.dependence == Dependence::Comonotonic);
    if (cfg.shortcuts && no_gain) {
        r.objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r.params.push_back({0.0, caps[i], 0.0});
            r.objective += caps[i];
            r.flat_intervals.push_back({i, 'a', 0.0, caps[i]});
        }
        if (worst && n == 2) r.t_star = 0.0;
        r.warnings.push_back("no improvement: reinsurer level is at or above every insurer level");
        return r;
    }

    const KContext ctx(sk, worst, cfg);
    const std::size_t p = points_per_dim(cfg, n);
    Box box;
    for (std::size_t i = 0; i < n; ++i) {
        box.lo.push_back(0.0);
        box.hi.push_back(caps[i]);
        box.points.push_back(caps[i] > 0.0 ? p : 1);
    }
    const Eval coarse = [&](const std::vector<double>& a) { return ctx.eval(a, caps, false).value; };
    const Eval fine = [&](const std::vector<double>& a) { return ctx.eval(a, caps, true).value; };
    const BoxBest best = box_search(box, coarse, fine, cfg);

    const InnerT at = ctx.eval(best.x, caps, true);
    r.objective = at.value;
    for (std::size_t i = 0; i < n; ++i) r.params.push_back({best.x[i], caps[i], 0.0});
    if (worst && n == 2) r.t_star = at.t;
    if (ctx.boundary) r.warnings.push_back("inner t restricted to {0, 1-alpha} by the boundary certificate");
    for (std::size_t i = 0; i < n; ++i) {
        const auto [lo, hi] = flat_range(
            [&](double v) {
                std::vector<double> a = best.x;
                a[i] = v;
                return fine(a);
            },
            best.x[i], 0.0, caps[i], spacing(box, i), r.objective, cfg.flat_tolerance);
        r.flat_intervals.push_back({i, 'a', lo, hi});
    }
    return r;
}

double g_term(const Scenario& s, std::size_t i, double a, double b) {
    try {
        const Indemnity f = Indemnity::layer(a, b);
        const RiskLevels& re = s.reinsurer_levels;
        return insurer_term(s, i, f.profile()) +
               window_average(s.marginals[i], f.profile(), Side::ceded, 1.0 - re.alpha, 1.0);
    } catch (const DivergenceError&) {
        return kInf;
    }
}

void check_g_scenario(const Scenario& s, const std::string& who) {
    require_mode(s, Mode::RVaR, who);
    require(s.reinsurer_levels.beta == 0.0, who + ": reinsurer beta must be 0");
    require(s.reinsurer_levels.alpha > 0.0, who + ": reinsurer alpha must be positive");
}

OptimizeResult minimize_g(const Scenario& s, const SearchConfig& cfg) {
    check_g_scenario(s, "minimize G");
    OptimizeResult r;
    r.objective_id = ObjectiveId::G;
    const std::size_t p = points_per_dim(cfg, 2);
    for (std::size_t i = 0; i < s.n(); ++i) {
        const Distribution& d = s.marginals[i];
        const Eval f = [&](const std::vector<double>& uv) {
            if (uv[0] > uv[1]) return kInf;
            const double a = loss_at(d, uv[0]);
            if (!std::isfinite(a)) return kInf;
            return g_term(s, i, a, loss_at(d, uv[1]));
        };
        const Box box{{0.0, 0.0}, {1.0, 1.0}, {p, p}};
        const BoxBest best = box_search(box, f, f, cfg);
        const double a = loss_at(d, best.x[0]), b = loss_at(d, best.x[1]);
        r.params.push_back({a, b, 0.0});
        const double opt_i = g_term(s, i, a, b);
        const double step = spacing(box, 0);
        auto [ulo, uhi] = flat_range([&](double u) { return f({u, best.x[1]}); }, best.x[0], 0.0, best.x[1], step,
                                     opt_i, cfg.flat_tolerance);
        r.flat_intervals.push_back({i, 'a', loss_at(d, ulo), loss_at(d, uhi)});
        auto [vlo, vhi] = flat_range([&](double v) { return f({best.x[0], v}); }, best.x[1], best.x[0], 1.0, step,
                                     opt_i, cfg.flat_tolerance);
        r.flat_intervals.push_back({i, 'b', loss_at(d, vlo), loss_at(d, vhi)});
    }
    std::vector<double> a, b;
    for (const ContractParams& q : r.params) {
        a.push_back(q.a);
        b.push_back(q.b);
    }
    r.objective = objective_G(s, a, b);
    return r;
}

struct InnerChoice {
    double value;
    ContractParams p;
};

using InnerSolver = std::function<InnerChoice(std::size_t, double, double)>;

// Picks the first candidate not beaten beyond the tie tolerance.
InnerChoice pick(std::initializer_list<InnerChoice> cands) {
    InnerChoice best = *cands.begin();
    for (const InnerChoice& c : cands) {
        if (c.value < best.value && !ties_with(c.value, best.value)) best = c;
    }
    return best;
}

OptimizeResult nested(ObjectiveId id, const Scenario& s, double total, double floor, const InnerSolver& inner,
                      const SearchConfig& cfg) {
    SimplexSearchConfig sc = cfg.simplex;
    sc.workers = cfg.workers;
    const BoundResult b = minimize_over_simplex(
        s.n(), total, floor, [&](std::size_t i, double gi, double g0) { return inner(i, gi, g0).value; }, sc);
    OptimizeResult r;
    r.objective_id = id;
    r.gamma_star = b.witness;
    for (std::size_t i = 0; i < s.n(); ++i) {
        r.params.push_back(inner(i, b.witness.gamma[i + 1], b.witness.gamma[0]).p);
    }
    r.objective = evaluate_objective(id, s, r.params, r, cfg);
    return r;
}

// Flat scan of one parameter with gamma held at its witness.
void scan_param(OptimizeResult& r, ObjectiveId id, const Scenario& s, std::size_t i, char param, double lo,
                double hi, double step, const SearchConfig& cfg) {
    auto f = [&](double v) {
        std::vector<ContractParams> p = r.params;
        (param == 'a' ? p[i].a : param == 'b' ? p[i].b : p[i].c) = v;
        try {
            return evaluate_objective(id, s, p, r, cfg);
        } catch (const Error&) {
            return kInf;
        }
    };
    const double x0 = param == 'a' ? r.params[i].a : param == 'b' ? r.params[i].b : r.params[i].c;
    const auto [l, h] = flat_range(f, x0, lo, hi, step, r.objective, cfg.flat_tolerance);
    r.flat_intervals.push_back({i, param, l, h});
}

void shape_warnings(OptimizeResult& r, const Scenario& s, double level, bool want_convex, const std::string& what) {
    const double lv = std::clamp(level, 1e-12, 1.0 - 1e-12);
    for (std::size_t i = 0; i < s.n(); ++i) {
        const TailShape t = tail_shape(s.marginals[i], lv);
        if (!(want_convex ? t.convex_beyond : t.concave_beyond)) {
            r.warnings.push_back("assumption unmet: marginal " + std::to_string(i + 1) + " is not " + what +
                                 " beyond its quantile; the value is an upper bound only");
        }
    }
}

OptimizeResult minimize_r(const Scenario& s, const SearchConfig& cfg) {
    require_mode(s, Mode::RVaR, "minimize R");
    const double total = rvar_total(s), floor = s.reinsurer_levels.alpha;
    require(floor > 0.0, "minimize R: reinsurer alpha must be positive");
    const int pts = cfg.inner_points;
    const InnerSolver inner = [&](std::size_t i, double gi, double g0) -> InnerChoice {
        const Distribution& d = s.marginals[i];
        auto value_of = [&](const Indemnity& f) {
            try {
                return insurer_term(s, i, f.profile()) + gamma_term(d, f.profile(), gi, g0);
            } catch (const DivergenceError&) {
                return kInf;
            }
        };
        const InnerChoice none{value_of(Indemnity::zero()), {0.0, 0.0, 0.0}};
        const Point1D v = search_1d([&](double u) { return value_of(Indemnity::prop_excess(0.0, loss_at(d, u), 1.0)); },
                                    0.0, 1.0, pts);
        const InnerChoice stop{v.value, {0.0, loss_at(d, v.x), 1.0}};
        const InnerChoice full{value_of(Indemnity::identity()), {1.0, 0.0, 0.0}};
        return pick({none, stop, full});
    };
    OptimizeResult r = nested(ObjectiveId::R, s, total, floor, inner, cfg);
    shape_warnings(r, s, 1.0 - total, false, "concave");
    for (std::size_t i = 0; i < s.n(); ++i) {
        if (r.params[i].c != 1.0) continue;
        const Distribution& d = s.marginals[i];
        // scan in probability coordinates so the upper end stays finite when it can
        std::vector<ContractParams> base = r.params;
        auto f = [&](double u) {
            std::vector<ContractParams> p = base;
            p[i].b = loss_at(d, u);
            try {
                return evaluate_objective(ObjectiveId::R, s, p, r, cfg);
            } catch (const Error&) {
                return kInf;
            }
        };
        const double u0 = d.cdf(r.params[i].b);
        const auto [l, h] = flat_range(f, u0, 0.0, 1.0, 1.0 / (pts - 1), r.objective, cfg.flat_tolerance);
        r.flat_intervals.push_back({i, 'b', loss_at(d, l), loss_at(d, h)});
    }
    return r;
}

OptimizeResult minimize_gbar(const Scenario& s, const SearchConfig& cfg) {
    require_mode(s, Mode::VaR, "minimize Gbar");
    require(s.n() == 2, "minimize Gbar: n must be 2");
    const std::vector<double> caps = reduce_caps(s);
    const InnerSolver inner = [&](std::size_t i, double gi, double g0) -> InnerChoice {
        auto value_of = [&](double a) {
            const Indemnity f = Indemnity::layer(a, caps[i]);
            return insurer_term(s, i, f.profile()) + gamma_term(s.marginals[i], f.profile(), gi, g0);
        };
        const Point1D p = search_1d(value_of, 0.0, caps[i], cfg.inner_points);
        return {p.value, {p.x, caps[i], 0.0}};
    };
    OptimizeResult r = nested(ObjectiveId::Gbar, s, var_total(s), 0.0, inner, cfg);
    for (std::size_t i = 0; i < s.n(); ++i) {
        scan_param(r, ObjectiveId::Gbar, s, i, 'a', 0.0, caps[i], caps[i] / (cfg.inner_points - 1), cfg);
    }
    return r;
}

OptimizeResult minimize_lh(ObjectiveId id, const Scenario& s, const SearchConfig& cfg) {
    const bool is_l = id == ObjectiveId::L;
    require_mode(s, Mode::VaR, "minimize " + objective_name(id));
    const std::vector<double> caps = reduce_caps(s);
    const InnerSolver inner = [&](std::size_t i, double gi, double g0) -> InnerChoice {
        auto make = [&](double b) { return is_l ? Indemnity::capped_prop(1.0, b) : Indemnity::shifted_prop(1.0, b); };
        auto value_of = [&](double b) {
            const Indemnity f = make(b);
            return insurer_term(s, i, f.profile()) + gamma_term(s.marginals[i], f.profile(), gi, g0);
        };
        const InnerChoice none{caps[i], {0.0, 0.0, 0.0}};
        const Point1D p = search_1d(value_of, 0.0, caps[i], cfg.inner_points);
        const InnerChoice full{p.value, {1.0, p.x, 0.0}};
        return pick({none, full});
    };
    OptimizeResult r = nested(id, s, var_total(s), 0.0, inner, cfg);
    shape_warnings(r, s, s.reinsurer_level(), is_l, is_l ? "convex" : "concave");
    for (std::size_t i = 0; i < s.n(); ++i) {
        if (r.params[i].a != 1.0) continue;
        scan_param(r, id, s, i, 'b', 0.0, caps[i], caps[i] / (cfg.inner_points - 1), cfg);
    }
    return r;
}

OptimizeResult minimize_tilde_g(const Scenario& s, const SearchConfig& cfg) {
    const AsymptoticScenario as = AsymptoticScenario::from(s);
    as.validate();
    const std::size_t n = s.n();
    const std::size_t p = points_per_dim(cfg, 2 * n);
    Box box;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        box.lo.push_back(0.0);
        box.hi.push_back(1.0);
        box.points.push_back(p);
    }
    auto params_of = [&](const std::vector<double>& x, std::vector<double>& a, std::vector<double>& b) {
        a.assign(n, 0.0);
        b.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[2 * i] > x[2 * i + 1]) return false;
            a[i] = loss_at(s.marginals[i], x[2 * i]);
            b[i] = loss_at(s.marginals[i], x[2 * i + 1]);
            if (!std::isfinite(a[i])) return false;
        }
        return true;
    };
    const Eval f = [&](const std::vector<double>& x) {
        std::vector<double> a, b;
        if (!params_of(x, a, b)) return kInf;
        try {
            return objective_tilde_G(as, a, b);
        } catch (const DivergenceError&) {
            return kInf;
        }
    };
    const BoxBest best = box_search(box, f, f, cfg);
    OptimizeResult r;
    r.objective_id = ObjectiveId::TildeG;
    std::vector<double> a, b;
    params_of(best.x, a, b);
    for (std::size_t i = 0; i < n; ++i) r.params.push_back({a[i], b[i], 0.0});
    r.objective = objective_tilde_G(as, a, b);
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const std::size_t i = k / 2;
        const bool is_a = k % 2 == 0;
        const double lo = is_a ? 0.0 : best.x[k - 1], hi = is_a ? best.x[k + 1] : 1.0;
        const auto [l, h] = flat_range(
            [&](double v) {
                std::vector<double> x = best.x;
                x[k] = v;
                return f(x);
            },
            best.x[k], lo, hi, spacing(box, k), r.objective, cfg.flat_tolerance);
        r.flat_intervals.push_back({i, is_a ? 'a' : 'b', loss_at(s.marginals[i], l), loss_at(s.marginals[i], h)});
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Objective evaluations

double objective_G(const Scenario& s, std::span<const double> a, std::span<const double> b) {
    s.validate();
    check_g_scenario(s, "objective_G");
    const std::vector<ContractParams> p = pack(a, b, s.n(), "objective_G");
    require_admissible(p, AdmissibleDomain::A1, "objective_G");
    double total = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const Indemnity f = Indemnity::layer(a[i], b[i]);
        total += insurer_term(s, i, f.profile()) +
                 window_average(s.marginals[i], f.profile(), Side::ceded, 1.0 - s.reinsurer_levels.alpha, 1.0);
    }
    return total;
}

double objective_R(const Scenario& s, std::span<const ContractParams> p, const SimplexPoint& gamma) {
    s.validate();
    require_mode(s, Mode::RVaR, "objective_R");
    require(p.size() == s.n(), "objective_R: one contract per insurer");
    require_admissible(p, AdmissibleDomain::A2, "objective_R");
    check_gamma(s, gamma, rvar_total(s), s.reinsurer_levels.alpha, "objective_R");
    std::vector<Indemnity> fs;
    for (const ContractParams& q : p) fs.push_back(Indemnity::prop_excess(q.a, q.b, q.c));
    return gamma_objective(s, fs, gamma);
}

namespace {

double var_gamma_objective(const Scenario& s, std::span<const double> a, std::span<const double> b,
                           const SimplexPoint& gamma, AdmissibleDomain dom, const std::string& who) {
    s.validate();
    require_mode(s, Mode::VaR, who);
    const std::vector<ContractParams> p = pack(a, b, s.n(), who);
    require_admissible(p, dom, who);
    check_gamma(s, gamma, var_total(s), 0.0, who);
    std::vector<Indemnity> fs;
    for (const ContractParams& q : p) fs.push_back(make_contract(dom, q));
    return gamma_objective(s, fs, gamma);
}

}  // namespace

double objective_Gbar(const Scenario& s, std::span<const double> a, std::span<const double> b,
                      const SimplexPoint& gamma) {
    require(s.n() == 2, "objective_Gbar: n must be 2");
    return var_gamma_objective(s, a, b, gamma, AdmissibleDomain::A1, "objective_Gbar");
}

double objective_L(const Scenario& s, std::span<const double> a, std::span<const double> b,
                   const SimplexPoint& gamma) {
    return var_gamma_objective(s, a, b, gamma, AdmissibleDomain::A3, "objective_L");
}

double objective_H(const Scenario& s, std::span<const double> a, std::span<const double> b,
                   const SimplexPoint& gamma) {
    return var_gamma_objective(s, a, b, gamma, AdmissibleDomain::A4, "objective_H");
}

double objective_G1bar(const Scenario& s, std::span<const double> a, std::span<const double> b, double t) {
    s.validate();
    require_mode(s, Mode::VaR, "objective_G1bar");
    require(s.n() == 2, "objective_G1bar: n must be 2");
    const std::vector<ContractParams> p = pack(a, b, 2, "objective_G1bar");
    require_admissible(p, AdmissibleDomain::A1, "objective_G1bar");
    const double alpha = s.reinsurer_level();
    require(t >= 0.0 && t <= 1.0 - alpha + 1e-12, "objective_G1bar: t outside [0, 1-alpha]");
    double total = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double q = s.marginals[i].quantile(s.insurer_level(i));
        total += q - layered(q, a[i], b[i]);
    }
    total += layered(s.marginals[0].quantile(std::min(alpha + t, 1.0)), a[0], b[0]);
    total += layered(s.marginals[1].quantile(std::clamp(1.0 - t, alpha, 1.0)), a[1], b[1]);
    return total;
}

double objective_K(const Scenario& s, std::span<const double> a, std::span<const double> b,
                   const SearchConfig& cfg) {
    s.validate();
    const std::vector<ContractParams> p = pack(a, b, s.n(), "objective_K");
    require_admissible(p, AdmissibleDomain::A1, "objective_K");
    const KContext ctx(s, s.dependence == Dependence::WorstCase, cfg);
    return ctx.eval(a, b, true).value;
}

InnerT worst_case_t(const Scenario& s, std::span<const double> a, std::span<const double> b,
                    const SearchConfig& cfg) {
    s.validate();
    require(s.n() == 2, "worst_case_t: n must be 2");
    const std::vector<ContractParams> p = pack(a, b, 2, "worst_case_t");
    require_admissible(p, AdmissibleDomain::A1, "worst_case_t");
    const KContext ctx(s, true, cfg);
    return ctx.eval(a, b, true);
}

double objective_V(const Scenario& s, std::span<const Indemnity> contracts, const SearchConfig& cfg) {
    s.validate();
    const std::size_t n = s.n();
    require(contracts.size() == n, "objective_V: one contract per insurer");
    if (s.dependence == Dependence::IID && n > 1) {
        return objective_tilde_V(AsymptoticScenario::from(s), contracts);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += insurer_term(s, i, contracts[i].profile());

    const bool var_mode = s.mode == Mode::VaR;
    const RiskLevels& re = s.reinsurer_levels;
    auto own_window = [&](std::size_t i) {
        const PiecewiseLinear& f = contracts[i].profile();
        if (var_mode) return window_average(s.marginals[i], f, Side::ceded, re.alpha, re.alpha);
        const double hi = re.upper();
        return window_average(s.marginals[i], f, Side::ceded, re.is_var() ? hi : re.lower(), hi);
    };
    if (n == 1 || s.dependence != Dependence::WorstCase) {
        for (std::size_t i = 0; i < n; ++i) total += own_window(i);
        return total;
    }
    if (var_mode && n == 2) {
        const double alpha = re.alpha;
        const Distribution& d1 = s.marginals[0];
        const Distribution& d2 = s.marginals[1];
        auto pair_at = [&](double t) {
            return evaluate_profile(contracts[0].profile(), d1.quantile(std::min(alpha + t, 1.0))) +
                   evaluate_profile(contracts[1].profile(), d2.quantile(std::clamp(1.0 - t, alpha, 1.0)));
        };
        const Point1D p = search_1d(pair_at, 0.0, 1.0 - alpha, cfg.t_points);
        if (!std::isfinite(p.value)) throw DivergenceError("objective_V: worst-case term is infinite");
        return total + p.value;
    }
    SimplexSearchConfig sc = cfg.simplex;
    sc.workers = cfg.workers;
    const double sum = var_mode ? 1.0 - re.alpha : rvar_total(s);
    const double floor = var_mode ? 0.0 : re.alpha;
    const BoundResult b = minimize_over_simplex(
        n, sum, floor,
        [&](std::size_t i, double gi, double g0) { return gamma_term(s.marginals[i], contracts[i].profile(), gi, g0); },
        sc);
    return total + b.value;
}

std::vector<double> reduce_caps(const Scenario& s) {
    require_mode(s, Mode::VaR, "reduce_caps");
    std::vector<double> b(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) b[i] = s.marginals[i].quantile(s.insurer_level(i));
    return b;
}

BoundaryCertificate boundary_t_certificate(const Scenario& s) {
    require_mode(s, Mode::VaR, "boundary_t_certificate");
    if (s.n() != 2) return {false, "needs exactly two insurers"};
    const double alpha = s.reinsurer_level();
    if (alpha >= s.insurer_level(0) + s.insurer_level(1) - 1.0 - 1e-12) {
        return {true, "alpha >= alpha_1 + alpha_2 - 1"};
    }
    if (tail_shape(s.marginals[0], alpha).convex_beyond && tail_shape(s.marginals[1], alpha).convex_beyond) {
        return {true, "both marginals convex beyond their alpha-quantiles"};
    }
    return {false, "no sufficient condition holds"};
}

OptimizeResult minimize(ObjectiveId id, const Scenario& s, const SearchConfig& cfg) {
    validate_config(cfg);
    s.validate();
    require_continuous(s);
    switch (id) {
        case ObjectiveId::G:
            return minimize_g(s, cfg);
        case ObjectiveId::R:
            return minimize_r(s, cfg);
        case ObjectiveId::Gbar:
            return minimize_gbar(s, cfg);
        case ObjectiveId::L:
        case ObjectiveId::H:
            return minimize_lh(id, s, cfg);
        case ObjectiveId::G1bar:
        case ObjectiveId::K:
            return minimize_k(id, s, cfg);
        case ObjectiveId::TildeG:
            return minimize_tilde_g(s, cfg);
    }
    throw DomainError("minimize: unknown objective");
}

double evaluate_objective(ObjectiveId id, const Scenario& s, std::span<const ContractParams> params,
                          const OptimizeResult& r, const SearchConfig& cfg) {
    std::vector<double> a, b;
    for (const ContractParams& p : params) {
        a.push_back(p.a);
        b.push_back(p.b);
    }
    auto gamma = [&]() -> const SimplexPoint& {
        if (!r.gamma_star) throw DomainError("evaluate_objective: result carries no gamma witness");
        return *r.gamma_star;
    };
    switch (id) {
        case ObjectiveId::G:
            return objective_G(s, a, b);
        case ObjectiveId::R:
            return objective_R(s, params, gamma());
        case ObjectiveId::Gbar:
            return objective_Gbar(s, a, b, gamma());
        case ObjectiveId::L:
            return objective_L(s, a, b, gamma());
        case ObjectiveId::H:
            return objective_H(s, a, b, gamma());
        case ObjectiveId::G1bar:
            return worst_case_t(s, a, b, cfg).value;
        case ObjectiveId::K:
            return objective_K(s, a, b, cfg);
        case ObjectiveId::TildeG:
            return objective_tilde_G(AsymptoticScenario::from(s), a, b);
    }
    throw DomainError("evaluate_objective: unknown objective");
}

std::string objective_name(ObjectiveId id) {
    switch (id) {
        case ObjectiveId::G: return "G";
        case ObjectiveId::R: return "R";
        case ObjectiveId::Gbar: return "Gbar";
        case ObjectiveId::L: return "L";
        case ObjectiveId::H: return "H";
        case ObjectiveId::G1bar: return "G1bar";
        case ObjectiveId::K: return "K";
        case ObjectiveId::TildeG: return "TildeG";
    }
    return "?";
}

ObjectiveId parse_objective(const std::string& s) {
    for (ObjectiveId id : {ObjectiveId::G, ObjectiveId::R, ObjectiveId::Gbar, ObjectiveId::L, ObjectiveId::H,
                           ObjectiveId::G1bar, ObjectiveId::K, ObjectiveId::TildeG}) {
        if (objective_name(id) == s) return id;
    }
    throw ConfigError("unknown objective '" + s + "'");
}

AdmissibleDomain objective_domain(ObjectiveId id) {
    switch (id) {
        case ObjectiveId::R: return AdmissibleDomain::A2;
        case ObjectiveId::L: return AdmissibleDomain::A3;
        case ObjectiveId::H: return AdmissibleDomain::A4;
        default: return AdmissibleDomain::A1;
    }
}

}  // namespace reinsure
