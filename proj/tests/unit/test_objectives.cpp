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

#include <algorithm>
#include <cmath>
#include <vector>

#include "../test_support.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/experiments.hpp"
#include "reinsure/objectives.hpp"
#include "reinsure/serialization.hpp"

using namespace reinsure;

namespace {

Scenario rvar_scenario(std::vector<Distribution> ds, std::vector<RiskLevels> insurers, RiskLevels reinsurer) {
    Scenario s;
    s.marginals = std::move(ds);
    s.insurer_levels = std::move(insurers);
    s.reinsurer_levels = reinsurer;
    s.mode = Mode::RVaR;
    s.dependence = Dependence::WorstCase;
    return s;
}

Scenario g_scenario() {
    return rvar_scenario({Distribution::lomax(9, 8), Distribution::exponential(1.0)}, {{0.02, 0.1}, {0.05, 0.1}},
                         {0.0, 0.2});
}

Scenario r_scenario() {
    return rvar_scenario({Distribution::lomax(9, 8), Distribution::exponential(1.0)}, {{0.02, 0.1}, {0.05, 0.1}},
                         {0.03, 0.1});
}

Scenario lomax_var() {
    return Scenario::var_mode({Distribution::lomax(9, 8), Distribution::lomax(6, 5)}, {0.95, 0.9}, 0.85,
                              Dependence::WorstCase);
}

Scenario uniform_var() {
    return Scenario::var_mode({Distribution::uniform(0, 2), Distribution::uniform(0, 3)}, {0.95, 0.9}, 0.85,
                              Dependence::WorstCase);
}

SimplexPoint gamma_point(std::vector<double> g, double total, double floor) { return SimplexPoint{std::move(g), total, floor}; }

// Average of h(Q(u)) over an RVaR window.
template <class H>
double window(const Distribution& d, const RiskLevels& l, H&& h) {
    return testsupport::quantile_average(d, 1.0 - l.beta - l.alpha, 1.0 - l.beta, h, 40000);
}

// Nondecreasing 1-Lipschitz profile with f(0) = 0.
Indemnity random_profile(std::mt19937_64& g, int shape) {
    std::uniform_real_distribution<double> knot(0.05, 4.0), slope(0.0, 1.0);
    std::vector<double> ks{0.0, knot(g), knot(g), knot(g)};
    std::sort(ks.begin(), ks.end());
    std::vector<double> sl{slope(g), slope(g), slope(g), slope(g)};
    if (shape > 0) std::sort(sl.begin(), sl.end());
    if (shape < 0) std::sort(sl.rbegin(), sl.rend());
    std::vector<double> vs{0.0};
    for (std::size_t k = 1; k < ks.size(); ++k) vs.push_back(vs.back() + sl[k - 1] * (ks[k] - ks[k - 1]));
    return Indemnity::piecewise(ks, vs, sl.back());
}

void check_reevaluation(ObjectiveId id, const Scenario& s, const OptimizeResult& r, const SearchConfig& cfg = {}) {
    CAPTURE(objective_name(id));
    CHECK(std::abs(evaluate_objective(id, s, r.params, r, cfg) - r.objective) < 1e-9);
    for (const FlatInterval& f : r.flat_intervals) {
        CAPTURE(f.insurer);
        CAPTURE(f.param);
        CHECK(f.lo <= f.hi);
        if (!std::isfinite(f.hi)) continue;
        for (int k = 0; k <= 10; ++k) {
            std::vector<ContractParams> p = r.params;
            double& slot = f.param == 'a' ? p[f.insurer].a : f.param == 'b' ? p[f.insurer].b : p[f.insurer].c;
            slot = f.lo + (f.hi - f.lo) * k / 10.0;
            if (!check_admissible(p, objective_domain(id))) continue;
            CHECK(std::abs(evaluate_objective(id, s, p, r, cfg) - r.objective) <= 1e-6);
        }
    }
}

double interval_hi(const OptimizeResult& r, std::size_t i, char p) {
    const auto f = find_interval(r, i, p);
    REQUIRE(f.has_value());
    return f->hi;
}

}  // namespace

TEST_CASE("objective_G examples") {
    const Scenario s = g_scenario();
    const std::vector<double> same{1.0, 0.5};
    const double none = rvar(s.marginals[0], s.insurer_levels[0]) + rvar(s.marginals[1], s.insurer_levels[1]);
    CHECK(std::abs(objective_G(s, same, same) - none) < 1e-12);
    const std::vector<double> zeros{0.0, 0.0}, infs{kInf, kInf};
    CHECK(std::abs(objective_G(s, zeros, infs) - es(s.marginals[0], 0.8) - es(s.marginals[1], 0.8)) < 1e-9);
    CHECK_THROWS_AS(objective_G(s, std::vector<double>{2.0, 0.0}, std::vector<double>{1.0, 1.0}), DomainError);
    Scenario bad = s;
    bad.reinsurer_levels = {0.05, 0.1};
    CHECK_THROWS_AS(objective_G(bad, zeros, infs), DomainError);
}

TEST_CASE("objective_G matches direct integration for an exponential insurer") {
    const Distribution d = Distribution::exponential(1.0);
    const Scenario s = rvar_scenario({d}, {{0.0, 0.05}}, {0.0, 0.1});
    const double a = 0.5, b = 2.0;
    auto g = [&](double x) { return std::clamp(x - a, 0.0, b - a); };
    const double oracle = window(d, {0.0, 0.05}, [](double x) { return x; }) -
                          window(d, {0.0, 0.05}, g) + window(d, {0.0, 0.1}, g);
    CHECK(std::abs(objective_G(s, std::vector<double>{a}, std::vector<double>{b}) - oracle) < 1e-6);
}

TEST_CASE("objective_R examples") {
    const Scenario s = r_scenario();
    const std::vector<ContractParams> zero{{0, 0, 0}, {0, 0, 0}};
    const double none = rvar(s.marginals[0], s.insurer_levels[0]) + rvar(s.marginals[1], s.insurer_levels[1]);
    for (const SimplexPoint& g : {gamma_point({0.13, 0.0, 0.0}, 0.13, 0.1), gamma_point({0.1, 0.01, 0.02}, 0.13, 0.1)}) {
        CHECK(std::abs(objective_R(s, zero, g) - none) < 1e-12);
    }
    // pure quota shares
    const SimplexPoint g = gamma_point({0.11, 0.015, 0.005}, 0.13, 0.1);
    const std::vector<ContractParams> qs{{0.3, 0.0, 0.0}, {0.7, 0.0, 0.0}};
    double expect = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double base = rvar(s.marginals[i], s.insurer_levels[i]);
        expect += base - qs[i].a * base + qs[i].a * rvar(s.marginals[i], {g.gamma[i + 1], g.gamma[0]});
    }
    CHECK(std::abs(objective_R(s, qs, g) - expect) < 1e-9);
}

TEST_CASE("objective_R with one insurer and identity cession matches direct integration") {
    const Distribution d = Distribution::lomax(9, 8);
    const Scenario s = rvar_scenario({d}, {{0.02, 0.1}}, {0.03, 0.1});
    const std::vector<ContractParams> id{{1.0, 0.0, 0.0}};
    const double oracle = window(d, {0.0, 0.13}, [](double x) { return x; });
    CHECK(std::abs(objective_R(s, id, gamma_point({0.13, 0.0}, 0.13, 0.1)) - oracle) < 1e-6);
}

TEST_CASE("objective_Gbar, L and H examples") {
    const Scenario s = table1_scenario(1, Dependence::WorstCase);
    const std::vector<double> zeros{0.0, 0.0}, ones{1.0, 1.0}, infs{kInf, kInf};
    const SimplexPoint g = gamma_point({0.02, 0.02, 0.01}, 0.05, 0.0);
    const double none = var(s.marginals[0], 0.9) + var(s.marginals[1], 0.85);
    CHECK(std::abs(objective_Gbar(s, ones, ones, g) - none) < 1e-12);
    CHECK(std::abs(none - 4.2096) < 1e-3);
    CHECK(std::abs(objective_L(s, zeros, ones, g) - none) < 1e-12);
    CHECK(std::abs(objective_H(s, zeros, ones, g) - none) < 1e-12);

    const BoundResult bound = simplex_var_bound(s.marginals, 0.95);
    const double at_id = objective_Gbar(s, zeros, infs, bound.witness);
    CHECK(std::abs(at_id - bound.value) < 1e-9);
    CHECK(std::abs(objective_L(s, ones, infs, bound.witness) - at_id) < 1e-12);
    CHECK(std::abs(objective_H(s, ones, zeros, bound.witness) - at_id) < 1e-12);
}

TEST_CASE("objective_G1bar examples") {
    const Scenario t2 = table2_scenario(0.98, 0.99);
    const std::vector<double> zeros{0.0, 0.0};
    const std::vector<double> caps = reduce_caps(t2);
    CHECK(std::abs(objective_G1bar(t2, zeros, caps, 0.052) - 6.3944) < 1e-3);
    for (double t : {0.0, 0.04, 0.1}) {
        CHECK(std::abs(objective_G1bar(t2, caps, caps, t) - var(t2.marginals[0], 0.98) - var(t2.marginals[1], 0.99)) <
              1e-12);
    }
    CHECK_THROWS_AS(objective_G1bar(t2, zeros, caps, 0.2), DomainError);

    const Scenario c1 = table1_scenario(1, Dependence::WorstCase);
    const OptimizeResult r = minimize(ObjectiveId::G1bar, c1);
    CHECK(std::abs(r.objective - 4.2096) < 1e-3);
    REQUIRE(r.t_star.has_value());
    CHECK(*r.t_star == 0.0);
}

TEST_CASE("objective_K regimes") {
    const Scenario com = table1_scenario(3, Dependence::Comonotonic);
    CHECK(std::abs(minimize(ObjectiveId::K, com).objective - 3.7545) < 1e-3);
    CHECK(std::abs(minimize(ObjectiveId::K, table1_scenario(2, Dependence::WorstCase)).objective - 4.2096) < 1e-3);
    CHECK(std::abs(minimize(ObjectiveId::K, table1_scenario(3, Dependence::IID)).objective - 2.9832) < 2e-2);
    const std::vector<double> caps = reduce_caps(com);
    CHECK(std::abs(objective_K(com, caps, caps) - var(com.marginals[0], 0.95) - var(com.marginals[1], 0.9)) < 1e-12);
}

TEST_CASE("reduce_caps examples") {
    const Scenario s = Scenario::var_mode({Distribution::lomax(9, 8), Distribution::lomax(6, 5), Distribution::point_mass(1.7)},
                                          {0.9, 0.9, 0.5}, 0.9, Dependence::Comonotonic);
    const std::vector<double> caps = reduce_caps(s);
    CHECK(std::abs(caps[0] - 2.3324) < 1e-4);
    CHECK(std::abs(caps[1] - 2.3390) < 1e-4);
    CHECK(caps[2] == 1.7);
}

TEST_CASE("boundary_t_certificate examples") {
    CHECK(boundary_t_certificate(table1_scenario(1, Dependence::WorstCase)).boundary_only);
    CHECK_FALSE(boundary_t_certificate(table2_scenario(0.98, 0.99)).boundary_only);
    const Scenario u = Scenario::var_mode({Distribution::uniform(0, 1), Distribution::uniform(0, 1)}, {0.99, 0.98}, 0.9,
                                          Dependence::WorstCase);
    const BoundaryCertificate c = boundary_t_certificate(u);
    CHECK(c.boundary_only);
    CHECK_FALSE(c.reason.empty());

    const OptimizeResult r = minimize(ObjectiveId::G1bar, table2_scenario(0.98, 0.99));
    REQUIRE(r.t_star.has_value());
    CHECK(std::abs(*r.t_star - 0.052) < 2e-3);
    CHECK(std::abs(r.objective - 6.3944) < 1e-3);
}

TEST_CASE("minimize reproduces the worst-case rows") {
    const OptimizeResult c1 = minimize(ObjectiveId::K, table1_scenario(1, Dependence::WorstCase));
    CHECK(std::abs(c1.objective - 4.2096) < 1e-3);
    CHECK(std::abs(interval_hi(c1, 0, 'a') - 2.3324) < 1e-2);
    CHECK(std::abs(interval_hi(c1, 1, 'a') - 1.8772) < 1e-2);
    CHECK(find_interval(c1, 0, 'a')->lo == 0.0);
    REQUIRE(c1.t_star.has_value());
    CHECK(*c1.t_star == 0.0);

    const OptimizeResult c3 = minimize(ObjectiveId::K, table1_scenario(3, Dependence::WorstCase));
    CHECK(std::abs(c3.objective - 4.2096) < 1e-3);
    CHECK(std::abs(interval_hi(c3, 0, 'a') - 1.8772) < 1e-2);
    CHECK(std::abs(interval_hi(c3, 1, 'a') - 2.3324) < 1e-2);
}

TEST_CASE("single insurer without improvement keeps the zero contract available") {
    for (Dependence dep : {Dependence::WorstCase, Dependence::Comonotonic, Dependence::IID}) {
        const Scenario s = Scenario::var_mode({Distribution::lomax(9, 8)}, {0.9}, 0.95, dep);
        const OptimizeResult r = minimize(ObjectiveId::K, s);
        CHECK(std::abs(r.objective - var(s.marginals[0], 0.9)) < 1e-9);
        const auto f = find_interval(r, 0, 'a');
        REQUIRE(f.has_value());
        CHECK(f->hi >= r.params[0].b - 1e-12);
    }
}

TEST_CASE("ES comparison: retention below the reinsurer quantile and unlimited cover") {
    const Distribution d = Distribution::lomax(9, 8);
    const Scenario wide = rvar_scenario({d, d}, {{0.0, 0.1}, {0.0, 0.1}}, {0.0, 0.2});
    const OptimizeResult r = minimize(ObjectiveId::G, wide);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::isinf(r.params[i].b));
        CHECK(r.params[i].a <= d.quantile(0.8) + 1e-9);
        CHECK(interval_hi(r, i, 'a') <= d.quantile(0.8) + 1e-2);
    }
    CHECK(r.objective <= 2.0 * es(d, 0.9) + 1e-9);
    // a narrower reinsurer window never beats no cover
    const Scenario narrow = rvar_scenario({d, d}, {{0.0, 0.1}, {0.0, 0.1}}, {0.0, 0.05});
    CHECK(std::abs(minimize(ObjectiveId::G, narrow).objective - 2.0 * es(d, 0.9)) < 1e-6);
}

TEST_CASE("results re-evaluate and flat intervals hold") {
    check_reevaluation(ObjectiveId::G, g_scenario(), minimize(ObjectiveId::G, g_scenario()));
    check_reevaluation(ObjectiveId::R, r_scenario(), minimize(ObjectiveId::R, r_scenario()));
    check_reevaluation(ObjectiveId::Gbar, lomax_var(), minimize(ObjectiveId::Gbar, lomax_var()));
    check_reevaluation(ObjectiveId::H, lomax_var(), minimize(ObjectiveId::H, lomax_var()));
    check_reevaluation(ObjectiveId::L, uniform_var(), minimize(ObjectiveId::L, uniform_var()));
    for (int c = 1; c <= 3; ++c) {
        for (Dependence dep : {Dependence::WorstCase, Dependence::Comonotonic, Dependence::IID}) {
            const Scenario s = table1_scenario(c, dep);
            check_reevaluation(ObjectiveId::K, s, minimize(ObjectiveId::K, s));
        }
    }
    const Scenario t2 = table2_scenario(0.98, 0.99);
    check_reevaluation(ObjectiveId::G1bar, t2, minimize(ObjectiveId::G1bar, t2));
}

TEST_CASE("worker count does not change results") {
    SearchConfig one, four;
    one.workers = 1;
    four.workers = 4;
    four.simplex.workers = 4;
    const std::vector<std::pair<ObjectiveId, Scenario>> cases{{ObjectiveId::G, g_scenario()},
                                                              {ObjectiveId::R, r_scenario()},
                                                              {ObjectiveId::Gbar, lomax_var()},
                                                              {ObjectiveId::K, table1_scenario(1, Dependence::IID)},
                                                              {ObjectiveId::G1bar, table2_scenario(0.98, 0.99)}};
    for (const auto& [id, s] : cases) {
        CAPTURE(objective_name(id));
        CHECK(to_json(minimize(id, s, one)).dump() == to_json(minimize(id, s, four)).dump());
    }
}

TEST_CASE("optima are not improved by perturbing one contract") {
    auto g = testsupport::rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    {
        const Scenario s = g_scenario();
        const OptimizeResult r = minimize(ObjectiveId::G, s);
        for (int k = 0; k < 200; ++k) {
            std::vector<Indemnity> fs;
            for (const ContractParams& p : r.params) fs.push_back(Indemnity::layer(p.a, p.b));
            const std::size_t i = k % 2;
            const double a = 4.0 * u(g), b = a + 4.0 * u(g);
            fs[i] = k % 4 < 2 ? Indemnity::layer(a, b) : random_profile(g, 0);
            CHECK(objective_V(s, fs) >= r.objective - 1e-6);
        }
    }
    {
        const Scenario s = table1_scenario(3, Dependence::WorstCase);
        const OptimizeResult r = minimize(ObjectiveId::K, s);
        for (int k = 0; k < 200; ++k) {
            std::vector<Indemnity> fs;
            for (const ContractParams& p : r.params) fs.push_back(Indemnity::layer(p.a, p.b));
            const std::size_t i = k % 2;
            const double a = 4.0 * u(g), b = a + 4.0 * u(g);
            fs[i] = k % 4 < 2 ? Indemnity::layer(a, b) : random_profile(g, 0);
            CHECK(objective_V(s, fs) >= r.objective - 1e-6);
        }
    }
}

TEST_CASE("family optima dominate random contract profiles") {
    struct Case {
        ObjectiveId id;
        Scenario s;
        int shape;
    };
    const std::vector<Case> cases{{ObjectiveId::G, g_scenario(), 0},
                                  {ObjectiveId::R, r_scenario(), 1},
                                  {ObjectiveId::Gbar, lomax_var(), 0},
                                  {ObjectiveId::L, uniform_var(), -1},
                                  {ObjectiveId::H, lomax_var(), 1}};
    auto g = testsupport::rng(2024);
    for (const Case& c : cases) {
        CAPTURE(objective_name(c.id));
        const double best = minimize(c.id, c.s).objective;
        for (int k = 0; k < 50; ++k) {
            std::vector<Indemnity> fs{random_profile(g, c.shape), random_profile(g, c.shape)};
            CHECK(best <= objective_V(c.s, fs) + 1e-6);
        }
    }
}

TEST_CASE("worst case dominates the other regimes on the table cases") {
    for (int c = 1; c <= 3; ++c) {
        CAPTURE(c);
        const double wc = minimize(ObjectiveId::K, table1_scenario(c, Dependence::WorstCase)).objective;
        CHECK(wc >= minimize(ObjectiveId::K, table1_scenario(c, Dependence::Comonotonic)).objective - 1e-9);
        CHECK(wc >= minimize(ObjectiveId::K, table1_scenario(c, Dependence::IID)).objective - 1e-9);
    }
}

TEST_CASE("objective names and configuration errors") {
    for (ObjectiveId id : {ObjectiveId::G, ObjectiveId::R, ObjectiveId::Gbar, ObjectiveId::L, ObjectiveId::H,
                           ObjectiveId::G1bar, ObjectiveId::K, ObjectiveId::TildeG}) {
        CHECK(parse_objective(objective_name(id)) == id);
    }
    CHECK_THROWS_AS(parse_objective("nope"), ConfigError);
    SearchConfig bad;
    bad.grid_points = 1;
    CHECK_THROWS_AS(minimize(ObjectiveId::K, table1_scenario(1, Dependence::WorstCase), bad), ConfigError);
    const Scenario disc = Scenario::var_mode({Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}}), Distribution::lomax(9, 8)},
                                             {0.9, 0.9}, 0.95, Dependence::WorstCase);
    CHECK_THROWS(minimize(ObjectiveId::K, disc));
}
