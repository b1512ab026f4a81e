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

#include "reinsure/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "reinsure/errors.hpp"
#include "reinsure/kernels.hpp"
#include "reinsure/normal.hpp"
#include "reinsure/parallel.hpp"
#include "reinsure/risk_measures.hpp"

namespace reinsure {

namespace {

double retained_term(const AsymptoticScenario& s, std::size_t i, const Indemnity& f) {
    const Distribution& d = s.marginals[i];
    if (s.mode == Mode::VaR) {
        const double p = s.insurer_levels[i].alpha;
        return window_average(d, f.profile(), Side::retained, p, p);
    }
    return measure_of_contract(d, f, s.insurer_levels[i], Side::retained);
}

std::vector<double> caps_of(const AsymptoticScenario& s) {
    std::vector<double> b(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) b[i] = s.marginals[i].quantile(s.insurer_levels[i].alpha);
    return b;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// E[X 1{X<0}] and E[X^2 1{X<0}].
std::pair<double, double> negative_part_moments(const Distribution& d) {
    if (const auto* n = std::get_if<Normal>(&d.law())) {
        const double z = n->mean / n->sd;
        const double tail = normal::cdf(-z), dens = normal::pdf(z);
        return {n->mean * tail - n->sd * dens,
                (n->mean * n->mean + n->sd * n->sd) * tail - n->mean * n->sd * dens};
    }
    if (const auto* u = std::get_if<Uniform>(&d.law()); u != nullptr && u->lo < 0.0) {
        const double top = std::min(0.0, u->hi), w = u->hi - u->lo;
        return {(top * top - u->lo * u->lo) / (2.0 * w), (top * top * top - u->lo * u->lo * u->lo) / (3.0 * w)};
    }
    return {0.0, 0.0};
}

}  // namespace

void AsymptoticScenario::validate() const {
    if (marginals.empty()) throw DomainError("asymptotic scenario: no insurers");
    if (insurer_levels.size() != marginals.size()) throw DomainError("asymptotic scenario: one level per insurer");
    for (const Distribution& d : marginals) {
        if (!std::isfinite(d.variance())) throw DomainError("asymptotic scenario: marginal variance must be finite");
    }
    Scenario tmp;
    tmp.marginals = marginals;
    tmp.insurer_levels = insurer_levels;
    tmp.reinsurer_levels = reinsurer_levels;
    tmp.mode = mode;
    tmp.validate();
}

AsymptoticScenario AsymptoticScenario::from(const Scenario& s) {
    AsymptoticScenario a;
    a.marginals = s.marginals;
    a.insurer_levels = s.insurer_levels;
    a.reinsurer_levels = s.reinsurer_levels;
    a.mode = s.mode;
    return a;
}

AsymptoticScenario AsymptoticScenario::iid(const Distribution& d, std::size_t n, const RiskLevels& insurer,
                                           const RiskLevels& reinsurer, Mode mode) {
    AsymptoticScenario a;
    a.marginals.assign(n, d);
    a.insurer_levels.assign(n, insurer);
    a.reinsurer_levels = reinsurer;
    a.mode = mode;
    return a;
}

IndemnityMoments indemnity_moments(const Distribution& d, const Indemnity& f) {
    const PiecewiseLinear& p = f.profile();
    double m1 = 0.0, m2 = 0.0;
    if (const double s0 = p.slopes.front(); s0 != 0.0) {
        const auto [e1, e2] = negative_part_moments(d);
        m1 += s0 * e1;
        m2 += s0 * s0 * e2;
    }
    for (std::size_t k = 0; k < p.knots.size(); ++k) {
        const double s = p.slopes[k];
        if (s == 0.0) continue;
        const double lo = p.knots[k];
        const double hi = k + 1 < p.knots.size() ? p.knots[k + 1] : kInf;
        const double w = layer_mean(d, lo, hi);
        m1 += s * w;
        m2 += s * (2.0 * p.values[k] * w + s * layer_second_moment_part(d, lo, hi));
    }
    return {m1, std::max(0.0, m2 - m1 * m1)};
}

double loading_M(double beta, double alpha) {
    if (!(beta >= 0.0) || !(alpha >= 0.0) || beta + alpha > 1.0 + 1e-12) {
        throw DomainError("loading_M: need beta, alpha >= 0 and beta + alpha <= 1");
    }
    const double hi = 1.0 - beta;
    if (alpha == 0.0) return normal::quantile(hi);
    const double lo = std::max(0.0, hi - alpha);
    const double phi_lo = lo == 0.0 ? 0.0 : normal::pdf(normal::quantile(lo));
    const double phi_hi = hi == 1.0 ? 0.0 : normal::pdf(normal::quantile(hi));
    return (phi_lo - phi_hi) / alpha;
}

double loading(const AsymptoticScenario& s) {
    if (s.mode == Mode::VaR) return normal::quantile(s.reinsurer_levels.alpha);
    return loading_M(s.reinsurer_levels.beta, s.reinsurer_levels.alpha);
}

double objective_tilde_V(const AsymptoticScenario& s, std::span<const Indemnity> contracts) {
    if (contracts.size() != s.n()) throw DomainError("objective_tilde_V: one contract per insurer");
    double total = 0.0, mu = 0.0, var = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        total += retained_term(s, i, contracts[i]);
        const IndemnityMoments m = indemnity_moments(s.marginals[i], contracts[i]);
        mu += m.mean;
        var += m.variance;
    }
    return total + mu + loading(s) * std::sqrt(var);
}

double objective_tilde_G(const AsymptoticScenario& s, std::span<const double> a, std::span<const double> b) {
    if (a.size() != s.n() || b.size() != s.n()) throw DomainError("objective_tilde_G: one (a, b) per insurer");
    std::vector<Indemnity> cs;
    cs.reserve(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) cs.push_back(Indemnity::layer(a[i], b[i]));
    return objective_tilde_V(s, cs);
}

double retention_objective(const AsymptoticScenario& s, std::span<const double> a) {
    if (s.mode != Mode::VaR) throw DomainError("retention_objective: VaR mode only");
    const std::vector<double> b = caps_of(s);
    double lin = 0.0, var = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        if (!(a[i] >= 0.0 && a[i] <= b[i])) throw DomainError("retention_objective: retention outside [0, cap]");
        const double w = layer_mean(s.marginals[i], a[i], b[i]);
        lin += a[i] + w;
        var += std::max(0.0, layer_second_moment_part(s.marginals[i], a[i], b[i]) - w * w);
    }
    return lin + loading(s) * std::sqrt(var);
}

AStarResult optimal_a_star(const AsymptoticScenario& s) {
    if (s.mode != Mode::VaR) throw DomainError("optimal_a_star: VaR mode only");
    s.validate();
    const std::size_t n = s.n();
    AStarResult out;
    out.b = caps_of(s);
    out.a.assign(n, 0.0);
    const double z = loading(s);
    if (z <= 0.0) {
        out.objective = retention_objective(s, out.a);
        return out;
    }
    auto var_part = [&](std::size_t j, double a) {
        const double w = layer_mean(s.marginals[j], a, out.b[j]);
        return std::make_pair(w, std::max(0.0, layer_second_moment_part(s.marginals[j], a, out.b[j]) - w * w));
    };
    out.converged = false;
    for (int sweep = 1; sweep <= 200; ++sweep) {
        out.sweeps = sweep;
        double max_change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double others = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) others += var_part(j, out.a[j]).second;
            }
            auto holds = [&](double x) {
                const auto [w, v] = var_part(i, x);
                const double den = std::sqrt(others + v);
                if (!(den > 0.0)) return true;
                return 1.0 - z * w / den >= 0.0;
            };
            double next = 0.0;
            if (!holds(0.0)) {
                double lo = 0.0, hi = out.b[i];
                for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (holds(mid) ? hi : lo) = mid;
                }
                next = hi;
            }
            max_change = std::max(max_change, std::abs(next - out.a[i]));
            out.a[i] = next;
        }
        if (max_change < 1e-10) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged && n <= 3) {
        // joint grid fallback
        const std::size_t pts = 101;
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= pts;
        std::vector<double> best_a = out.a;
        double best = retention_objective(s, out.a);
        std::vector<double> trial(n);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t r = idx;
            for (std::size_t i = n; i-- > 0;) {
                trial[i] = out.b[i] * static_cast<double>(r % pts) / static_cast<double>(pts - 1);
                r /= pts;
            }
            const double v = retention_objective(s, trial);
            if (v < best) {
                best = v;
                best_a = trial;
            }
        }
        out.a = best_a;
    }
    out.objective = retention_objective(s, out.a);
    return out;
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t z = splitmix64(splitmix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL));
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

double clt_check(const Distribution& d, const Indemnity& f, const CltConfig& cfg) {
    if (cfg.n == 0 || cfg.sample_size == 0) throw DomainError("clt_check: n and sample_size must be positive");
    const IndemnityMoments m = indemnity_moments(d, f);
    if (!(m.variance > 0.0) || !std::isfinite(m.variance)) {
        throw DomainError("clt_check: indemnity must have positive finite variance");
    }
    const double mean = static_cast<double>(cfg.n) * m.mean;
    const double sd = std::sqrt(static_cast<double>(cfg.n) * m.variance);

    const LayerGB* layer = std::get_if<LayerGB>(&f.form());
    const bool layer_kernel = layer != nullptr && (layer->a > 0.0 || d.quantile_closed(0.0) >= 0.0);
    constexpr std::size_t kBlock = 2048;
    const std::size_t blocks = (cfg.sample_size + kBlock - 1) / kBlock;
    std::vector<double> z(cfg.sample_size);
    parallel_for(blocks, cfg.workers, [&](std::size_t blk) {
        const std::size_t r0 = blk * kBlock;
        const std::size_t len = std::min(kBlock, cfg.sample_size - r0);
        std::vector<double> acc(len, 0.0), x(len);
        for (std::size_t j = 0; j < cfg.n; ++j) {
            for (std::size_t r = 0; r < len; ++r) {
                const std::uint64_t counter = static_cast<std::uint64_t>(r0 + r) * cfg.n + j;
                x[r] = d.quantile(counter_uniform(cfg.seed, counter));
            }
            if (layer_kernel) {
                kernels::accumulate_layered(acc, x, kernels::Layer{layer->a, layer->b - layer->a});
            } else {
                for (std::size_t r = 0; r < len; ++r) acc[r] += evaluate_profile(f.profile(), x[r]);
            }
        }
        for (std::size_t r = 0; r < len; ++r) z[r0 + r] = (acc[r] - mean) / sd;
    });
    std::sort(z.begin(), z.end());
    const double nn = static_cast<double>(z.size());
    double ks = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double c = normal::cdf(z[k]);
        ks = std::max({ks, static_cast<double>(k + 1) / nn - c, c - static_cast<double>(k) / nn});
    }
    return ks;
}

}  // namespace reinsure
