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

#include "reinsure/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <map>
#include <memory>
#include <mutex>

#include "reinsure/errors.hpp"

namespace reinsure {

GaussLegendre::GaussLegendre(int nodes) {
    if (nodes < 1) throw DomainError("Gauss-Legendre: need at least one node");
    // Boost returns the nonnegative zeros in ascending order.
    const std::vector<double> pos = boost::math::legendre_p_zeros<double>(nodes);
    std::vector<double> x;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        if (*it != 0.0) x.push_back(-*it);
    }
    for (double z : pos) x.push_back(z);
    nodes_ = x;
    weights_.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dp = boost::math::legendre_p_prime(nodes, x[k]);
        weights_[k] = 2.0 / ((1.0 - x[k] * x[k]) * dp * dp);
    }
}

void GaussLegendre::map(double lo, double hi, std::vector<double>& x, std::vector<double>& w) const {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    x.resize(nodes_.size());
    w.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        x[k] = mid + half * nodes_[k];
        w[k] = half * weights_[k];
    }
}

const GaussLegendre& gauss_legendre(int nodes) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[nodes];
    if (!slot) slot = std::make_unique<GaussLegendre>(nodes);
    return *slot;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth) {
    if (hi == lo) return 0.0;
    if (hi < lo) return -adaptive_simpson(f, hi, lo, abs_tol, max_depth);
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, lo, hi, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace reinsure
