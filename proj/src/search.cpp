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

#include "reinsure/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reinsure/kernels.hpp"

namespace reinsure {

bool ties_with(double v, double ref, double rel_tol) {
    if (v == ref) return true;
    if (!std::isfinite(v) || !std::isfinite(ref)) return false;
    return std::abs(v - ref) <= rel_tol * std::max(1.0, std::abs(ref));
}

std::size_t first_min_index(std::span<const double> values, double rel_tol) {
    const kernels::MinIndex m = kernels::argmin(values);
    for (std::size_t i = 0; i < m.index; ++i) {
        if (ties_with(values[i], m.value, rel_tol)) return i;
    }
    return m.index;
}

Point1D golden_section(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<Point1D> seen;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    seen.push_back({c, fc});
    seen.push_back({d, fd});
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            seen.push_back({c, fc});
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            seen.push_back({d, fd});
        }
    }
    std::sort(seen.begin(), seen.end(), [](const Point1D& p, const Point1D& q) { return p.x < q.x; });
    Point1D best{0.0, std::numeric_limits<double>::infinity()};
    for (const Point1D& p : seen) {
        if (p.value < best.value && !ties_with(p.value, best.value)) best = p;
    }
    if (!std::isfinite(best.value)) return seen.front();
    return best;
}

}  // namespace reinsure
