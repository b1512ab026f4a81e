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

#include <arm_neon.h>

#include <algorithm>
#include <limits>

#include "backends.hpp"

namespace reinsure::kernels::neon {

namespace {

inline float64x2_t layered2(float64x2_t v, float64x2_t r, float64x2_t lim) {
    const float64x2_t d = vsubq_f64(v, r);
    // Select instead of vmaxq/vminq so zero and limit handling matches the scalar path.
    const float64x2_t pos = vbslq_f64(vcgtq_f64(d, vdupq_n_f64(0.0)), d, vdupq_n_f64(0.0));
    return vbslq_f64(vcltq_f64(pos, lim), pos, lim);
}

struct Tracker {
    float64x2_t best = vdupq_n_f64(std::numeric_limits<double>::infinity());
    float64x2_t idx = vdupq_n_f64(0.0);
    float64x2_t cur = {0.0, 1.0};

    void push(float64x2_t s) {
        const uint64x2_t lt = vcltq_f64(s, best);
        best = vbslq_f64(lt, s, best);
        idx = vbslq_f64(lt, cur, idx);
        cur = vaddq_f64(cur, vdupq_n_f64(2.0));
    }

    MinIndex reduce() const {
        const double b0 = vgetq_lane_f64(best, 0), b1 = vgetq_lane_f64(best, 1);
        const auto i0 = static_cast<std::size_t>(vgetq_lane_f64(idx, 0));
        const auto i1 = static_cast<std::size_t>(vgetq_lane_f64(idx, 1));
        MinIndex out{std::numeric_limits<double>::infinity(), 0};
        if (b0 < out.value) out = {b0, i0};
        if (b1 < out.value || (b1 == out.value && b1 < std::numeric_limits<double>::infinity() &&
                               i1 < out.index)) {
            out = {b1, i1};
        }
        return out;
    }
};

}  // namespace

double dot(std::span<const double> w, std::span<const double> x) {
    const std::size_t n = std::min(w.size(), x.size());
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(&w[i]), vld1q_f64(&x[i])));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += w[i] * x[i];
    return s;
}

MinIndex min_pair_sum(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    Tracker t;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) t.push(vaddq_f64(vld1q_f64(&x[i]), vld1q_f64(&y[i])));
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
    const float64x2_t rx = vdupq_n_f64(fx.retention), lx = vdupq_n_f64(fx.limit);
    const float64x2_t ry = vdupq_n_f64(fy.retention), ly = vdupq_n_f64(fy.limit);
    Tracker t;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        t.push(vaddq_f64(layered2(vld1q_f64(&x[i]), rx, lx), layered2(vld1q_f64(&y[i]), ry, ly)));
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
    const float64x2_t r = vdupq_n_f64(f.retention), lim = vdupq_n_f64(f.limit);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(&acc[i], vaddq_f64(vld1q_f64(&acc[i]), layered2(vld1q_f64(&x[i]), r, lim)));
    }
    for (; i < n; ++i) acc[i] += layered(x[i], f);
}

void add_into(std::span<double> acc, std::span<const double> x) {
    const std::size_t n = std::min(acc.size(), x.size());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(&acc[i], vaddq_f64(vld1q_f64(&acc[i]), vld1q_f64(&x[i])));
    for (; i < n; ++i) acc[i] += x[i];
}

MinIndex argmin(std::span<const double> x) {
    Tracker t;
    std::size_t i = 0;
    for (; i + 2 <= x.size(); i += 2) t.push(vld1q_f64(&x[i]));
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

}  // namespace reinsure::kernels::neon
