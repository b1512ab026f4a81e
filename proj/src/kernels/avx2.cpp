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

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "backends.hpp"

namespace reinsure::kernels::avx2 {

namespace {

inline __m256d layered4(__m256d v, __m256d r, __m256d lim) {
    const __m256d d = _mm256_max_pd(_mm256_sub_pd(v, r), _mm256_setzero_pd());
    return _mm256_min_pd(d, lim);
}

// Lane-wise running minimum with first-occurrence indices, reduced to the
// global first minimum.
struct Tracker {
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d idx = _mm256_setzero_pd();
    __m256d cur = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);

    void push(__m256d s) {
        const __m256d lt = _mm256_cmp_pd(s, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, s, lt);
        idx = _mm256_blendv_pd(idx, cur, lt);
        cur = _mm256_add_pd(cur, _mm256_set1_pd(4.0));
    }

    MinIndex reduce() const {
        alignas(32) double b[4];
        alignas(32) double k[4];
        _mm256_store_pd(b, best);
        _mm256_store_pd(k, idx);
        MinIndex out{std::numeric_limits<double>::infinity(), 0};
        bool found = false;
        for (int l = 0; l < 4; ++l) {
            const auto i = static_cast<std::size_t>(k[l]);
            if (b[l] < out.value || (found && b[l] == out.value && i < out.index)) {
                out = {b[l], i};
                found = true;
            }
        }
        return out;
    }
};

}  // namespace

double dot(std::span<const double> w, std::span<const double> x) {
    const std::size_t n = std::min(w.size(), x.size());
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&x[i])));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += w[i] * x[i];
    return s;
}

MinIndex min_pair_sum(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    Tracker t;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        t.push(_mm256_add_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i])));
    }
    MinIndex best = t.reduce();
    for (; i < n; ++i) {
        const double s = x[i] + y[i];
        if (s < best.value) best = {s, i};
    }
    return best;
}

MinIndex min_layered_pair_sum(std::span<const double> x, std::span<const double> y,
                              Layer fx, Layer fy) {
    const std::size_t n = std::min(x.size(), y.size());
    const __m256d rx = _mm256_set1_pd(fx.retention), lx = _mm256_set1_pd(fx.limit);
    const __m256d ry = _mm256_set1_pd(fy.retention), ly = _mm256_set1_pd(fy.limit);
    Tracker t;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        t.push(_mm256_add_pd(layered4(_mm256_loadu_pd(&x[i]), rx, lx),
                             layered4(_mm256_loadu_pd(&y[i]), ry, ly)));
    }
    MinIndex best = t.reduce();
    for (; i < n; ++i) {
        const double s = layered(x[i], fx) + layered(y[i], fy);
        if (s < best.value) best = {s, i};
    }
    return best;
}

void accumulate_layered(std::span<double> acc, std::span<const double> x, Layer f) {
    const std::size_t n = std::min(acc.size(), x.size());
    const __m256d r = _mm256_set1_pd(f.retention), lim = _mm256_set1_pd(f.limit);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(&acc[i]);
        _mm256_storeu_pd(&acc[i], _mm256_add_pd(a, layered4(_mm256_loadu_pd(&x[i]), r, lim)));
    }
    for (; i < n; ++i) acc[i] += layered(x[i], f);
}

void add_into(std::span<double> acc, std::span<const double> x) {
    const std::size_t n = std::min(acc.size(), x.size());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(&acc[i], _mm256_add_pd(_mm256_loadu_pd(&acc[i]), _mm256_loadu_pd(&x[i])));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

MinIndex argmin(std::span<const double> x) {
    Tracker t;
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) t.push(_mm256_loadu_pd(&x[i]));
    MinIndex best = t.reduce();
    for (; i < x.size(); ++i) {
        if (x[i] < best.value) best = {x[i], i};
    }
    return best;
}

const Table& table() {
    static const Table t{dot, min_pair_sum, min_layered_pair_sum,
                         accumulate_layered, add_into, argmin};
    return t;
}

}  // namespace reinsure::kernels::avx2
