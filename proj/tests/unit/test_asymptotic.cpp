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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "../test_support.hpp"
#include "reinsure/asymptotic.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/experiments.hpp"
#include "reinsure/normal.hpp"
#include "reinsure/risk_measures.hpp"

using namespace reinsure;

namespace {

AsymptoticScenario lomax_iid(std::size_t n, double insurer, double reinsurer) {
    return AsymptoticScenario::iid(Distribution::lomax(9, 8), n, {0.0, insurer}, {0.0, reinsurer}, Mode::VaR);
}

// Symmetric threshold from survival integrals, bisected directly.
double symmetric_a_star(const Distribution& d, std::size_t n, double insurer, double reinsurer) {
    const double cap = d.quantile(insurer), z = normal::quantile(reinsurer);
    auto holds = [&](double a) {
        const double w = testsupport::simpson([&](double x) { return d.survival(x); }, a, cap, 4000);
        const double v = 2.0 * testsupport::simpson([&](double x) { return (x - a) * d.survival(x); }, a, cap, 4000);
        const double den = std::sqrt(static_cast<double>(n) * (v - w * w));
        return !(den > 0.0) || 1.0 - z * w / den >= 0.0;
    };
    if (holds(0.0)) return 0.0;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? hi : lo) = mid;
    }
    return hi;
}

bool threshold_holds(const AsymptoticScenario& s, const std::vector<double>& a, const std::vector<double>& b) {
    const double z = loading(s);
    double total = 0.0;
    std::vector<double> w(s.n());
    for (std::size_t j = 0; j < s.n(); ++j) {
        w[j] = layer_mean(s.marginals[j], a[j], b[j]);
        total += layer_second_moment_part(s.marginals[j], a[j], b[j]) - w[j] * w[j];
    }
    for (std::size_t j = 0; j < s.n(); ++j) {
        if (total > 0.0 && 1.0 - z * w[j] / std::sqrt(total) < 0.0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("loading_M examples") {
    CHECK(std::abs(loading_M(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(loading_M(0.0, 0.05) - 2.0627) < 1e-3);
    CHECK(std::abs(loading_M(0.0, 0.05) - normal::pdf(normal::quantile(0.95)) / 0.05) < 1e-12);
    CHECK(std::abs(loading_M(0.05, 1e-8) - 1.6449) < 1e-3);
    CHECK_THROWS_AS(loading_M(0.6, 0.6), DomainError);
}

TEST_CASE("loading_M equals the normal expected shortfall") {
    const Distribution z = Distribution::normal(0, 1);
    for (double a : {0.5, 0.9, 0.95, 0.99}) {
        const double oracle = testsupport::quantile_average(z, a, 1.0, [](double q) { return q; }, 400000);
        CHECK(std::abs(loading_M(0.0, 1.0 - a) - oracle) < 1e-8);
    }
}

TEST_CASE("objective_tilde_V examples") {
    const Distribution d = Distribution::lomax(9, 8);
    const AsymptoticScenario s = AsymptoticScenario::iid(d, 3, {0.02, 0.1}, {0.0, 0.05}, Mode::RVaR);
    const std::vector<Indemnity> zero(3, Indemnity::zero()), id(3, Indemnity::identity());
    CHECK(std::abs(objective_tilde_V(s, zero) - 3.0 * rvar(d, {0.02, 0.1})) < 1e-12);
    CHECK(std::abs(objective_tilde_V(s, id) - (3.0 * d.mean() + loading_M(0.0, 0.05) * std::sqrt(3.0 * d.variance()))) <
          1e-9);
}

TEST_CASE("objective_tilde_V agrees with Monte Carlo moments") {
    const Distribution d = Distribution::lomax(9, 8);
    const Indemnity g = Indemnity::layer(0.5, 2.3324);
    const RiskLevels mine{0.0, 0.1};
    const AsymptoticScenario s = AsymptoticScenario::iid(d, 1, mine, {0.0, 0.05}, Mode::RVaR);
    const double m = loading_M(0.0, 0.05);
    const int n = 1000000;
    auto rng = testsupport::rng(31);
    std::vector<double> ys(n);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        ys[k] = g.evaluate(d.quantile(testsupport::uniform01(rng)));
        sum += ys[k];
    }
    const double mu = sum / n;
    double ss = 0.0;
    for (double y : ys) ss += (y - mu) * (y - mu);
    const double sd = std::sqrt(ss / (n - 1));
    // delta-method standard error of mu + m * sd
    double si = 0.0;
    for (double y : ys) {
        const double infl = (y - mu) + m * ((y - mu) * (y - mu) - sd * sd) / (2.0 * sd);
        si += infl * infl;
    }
    const double se = std::sqrt(si / n / n);
    const double oracle = measure_of_contract(d, g, mine, Side::retained) + mu + m * sd;
    CHECK(std::abs(objective_tilde_V(s, std::vector<Indemnity>{g}) - oracle) < 3.0 * se);
}

TEST_CASE("objective_tilde_G examples") {
    const Distribution d = Distribution::exponential(1.2);
    const AsymptoticScenario s = AsymptoticScenario::iid(d, 2, {0.0, 0.1}, {0.0, 0.05}, Mode::RVaR);
    const std::vector<double> same{1.0, 2.0};
    CHECK(std::abs(objective_tilde_G(s, same, same) - 2.0 * es(d, 0.9)) < 1e-12);
    const AsymptoticScenario one = AsymptoticScenario::iid(d, 1, {0.0, 0.1}, {0.0, 0.05}, Mode::RVaR);
    CHECK(objective_tilde_G(one, std::vector<double>{0.3}, std::vector<double>{1.7}) ==
          objective_tilde_V(one, std::vector<Indemnity>{Indemnity::layer(0.3, 1.7)}));

    const AsymptoticScenario c1 = AsymptoticScenario::from(table1_scenario(1, Dependence::IID));
    const std::vector<double> a{0.4224, 0.3372};
    const std::vector<double> b{c1.marginals[0].quantile(0.9), c1.marginals[1].quantile(0.85)};
    CHECK(std::abs(objective_tilde_G(c1, a, b) - 3.2695) < 1e-2);
}

TEST_CASE("optimal_a_star examples") {
    const AsymptoticScenario c2 = AsymptoticScenario::from(table1_scenario(2, Dependence::IID));
    const AStarResult r = optimal_a_star(c2);
    CHECK(r.converged);
    CHECK(std::abs(r.a[0] - 0.0996) < 1e-2);
    CHECK(std::abs(r.a[1] - 0.0072) < 1e-2);
    CHECK(std::abs(r.objective - 3.1258) < 1e-2);
    CHECK(std::abs(r.b[0] - c2.marginals[0].quantile(0.95)) < 1e-12);

    const AStarResult low = optimal_a_star(lomax_iid(3, 0.9, 0.5));
    for (double a : low.a) CHECK(a == 0.0);
    const AStarResult lower = optimal_a_star(lomax_iid(2, 0.9, 0.3));
    for (double a : lower.a) CHECK(a == 0.0);
}

TEST_CASE("thresholds vanish at the caps") {
    const AsymptoticScenario s = AsymptoticScenario::from(table1_scenario(3, Dependence::IID));
    const std::vector<double> caps = optimal_a_star(s).b;
    double total = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        CHECK(layer_mean(s.marginals[i], caps[i], caps[i]) == 0.0);
        CHECK(layer_second_moment_part(s.marginals[i], caps[i], caps[i]) == 0.0);
        total += caps[i];
    }
    CHECK(retention_objective(s, caps) == total);
}

TEST_CASE("retention objective is nondecreasing where the threshold holds") {
    const AsymptoticScenario s = AsymptoticScenario::from(table1_scenario(2, Dependence::IID));
    const std::vector<double> caps = optimal_a_star(s).b;
    auto g = testsupport::rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int tested = 0;
    for (int tries = 0; tested < 100 && tries < 100000; ++tries) {
        std::vector<double> a{caps[0] * u(g), caps[1] * u(g)};
        if (!threshold_holds(s, a, caps)) continue;
        ++tested;
        const double f0 = retention_objective(s, a);
        for (std::size_t i = 0; i < 2; ++i) {
            std::vector<double> up = a;
            const double h = std::min(1e-6, caps[i] - a[i]);
            if (!(h > 0.0)) continue;
            up[i] += h;
            CHECK((retention_objective(s, up) - f0) / h >= -1e-8);
        }
    }
    CHECK(tested == 100);
}

TEST_CASE("closed-form retentions beat random retentions") {
    for (int c = 1; c <= 3; ++c) {
        const AsymptoticScenario s = AsymptoticScenario::from(table1_scenario(c, Dependence::IID));
        const AStarResult r = optimal_a_star(s);
        const double best = objective_tilde_G(s, r.a, r.b);
        CHECK(std::abs(best - r.objective) < 1e-9);
        auto g = testsupport::rng(100 + c);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 500; ++k) {
            const std::vector<double> a{r.b[0] * u(g), r.b[1] * u(g)};
            CHECK(best <= objective_tilde_G(s, a, r.b) + 1e-8);
        }
    }
}

TEST_CASE("retentions shrink as the pool grows") {
    const std::vector<std::size_t> sizes{1, 2, 4, 8, 16, 32};
    std::vector<double> seen;
    for (std::size_t n : sizes) {
        const AStarResult r = optimal_a_star(lomax_iid(n, 0.9, 0.95));
        const double oracle = symmetric_a_star(Distribution::lomax(9, 8), n, 0.9, 0.95);
        CAPTURE(n);
        for (double a : r.a) CHECK(std::abs(a - oracle) < 1e-6);
        seen.push_back(r.a[0]);
    }
    for (std::size_t k = 1; k < seen.size(); ++k) CHECK(seen[k] <= seen[k - 1] + 1e-12);
    CHECK(seen.back() < seen.front() / 5.0);
}

TEST_CASE("standardized sums approach the normal law") {
    CltConfig base;
    base.sample_size = 100000;
    base.seed = 11;
    CltConfig one = base;
    one.n = 1;
    CHECK(clt_check(Distribution::normal(0, 1), Indemnity::identity(), one) < 0.006);

    const Distribution d = Distribution::lomax(9, 8);
    const Indemnity g = Indemnity::layer(0.5, 2.0);
    CltConfig c200 = base, c25 = base, c400 = base;
    c200.n = 200;
    c25.n = 25;
    c400.n = 400;
    CHECK(clt_check(d, g, c200) < 0.02);
    CHECK(clt_check(d, g, c400) < clt_check(d, g, c25));
}

TEST_CASE("clt_check is reproducible across worker counts") {
    CltConfig a;
    a.n = 10;
    a.sample_size = 20000;
    a.seed = 3;
    CltConfig b = a;
    b.workers = 4;
    const Distribution d = Distribution::lomax(6, 5);
    const Indemnity g = Indemnity::layer(0.2, 3.0);
    CHECK(clt_check(d, g, a) == clt_check(d, g, b));
    CHECK(clt_check(d, g, a) == clt_check(d, g, a));
    CHECK(counter_uniform(1, 2) == counter_uniform(1, 2));
    CHECK(counter_uniform(1, 2) != counter_uniform(1, 3));
    CHECK(counter_uniform(9, 0) > 0.0);
    CHECK(counter_uniform(9, 0) < 1.0);
}

TEST_CASE("infinite variance is rejected") {
    CHECK_THROWS(AsymptoticScenario::iid(Distribution::lomax(1.5, 1), 2, {0.0, 0.1}, {0.0, 0.05}, Mode::VaR).validate());
}
