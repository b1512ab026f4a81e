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

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace reinsure {

// Gauss–Legendre rule on [-1, 1].
class GaussLegendre {
 public:
    explicit GaussLegendre(int nodes);

    int size() const { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    // Nodes and weights mapped to [lo, hi].
    void map(double lo, double hi, std::vector<double>& x, std::vector<double>& w) const;

    template <class F>
    double integrate(F&& f, double lo, double hi) const {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double s = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) s += weights_[k] * f(mid + half * nodes_[k]);
        return half * s;
    }

 private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Cached, thread-safe access to rules by node count.
const GaussLegendre& gauss_legendre(int nodes);

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol = 1e-10, int max_depth = 40);

}  // namespace reinsure
