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

#include <algorithm>
#include <limits>

#include "backends.hpp"

namespace reinsure::kernels::scalar {

double dot(std::span<const double> w, std::span<const double> x) {
    const std::size_t n = std::min(w.size(), x.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i];
    return s;
}

MinIndex min_pair_sum(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    MinIndex best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double s = x[i] + y[i];
        if (s < best.value) best = {s, i};
    }
    return best;
}

MinIndex min_layered_pair_sum(std::span<const double> x, std::span<const double> y,
                              Layer fx, Layer fy) {
    const std::size_t n = std::min(x.size(), y.size());
    MinIndex best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double s = layered(x[i], fx) + layered(y[i], fy);
        if (s < best.value) best = {s, i};
    }
    return best;
}

void accumulate_layered(std::span<double> acc, std::span<const double> x, Layer f) {
    const std::size_t n = std::min(acc.size(), x.size());
    for (std::size_t i = 0; i < n; ++i) acc[i] += layered(x[i], f);
}

void add_into(std::span<double> acc, std::span<const double> x) {
    const std::size_t n = std::min(acc.size(), x.size());
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

MinIndex argmin(std::span<const double> x) {
    MinIndex best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < best.value) best = {x[i], i};
    }
    return best;
}

const Table& table() {
    static const Table t{dot, min_pair_sum, min_layered_pair_sum,
                         accumulate_layered, add_into, argmin};
    return t;
}

}  // namespace reinsure::kernels::scalar
