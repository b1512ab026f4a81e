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

#include <atomic>
#include <cstdlib>
#include <string>

#include "backends.hpp"
#include "reinsure/errors.hpp"

namespace reinsure::kernels {

namespace {

bool cpu_has(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(REINSURE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(REINSURE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const Table& table_for(Backend b) {
    switch (b) {
#if defined(REINSURE_HAVE_AVX2)
        case Backend::avx2:
            return avx2::table();
#endif
#if defined(REINSURE_HAVE_NEON)
        case Backend::neon:
            return neon::table();
#endif
        default:
            return scalar::table();
    }
}

Backend initial_backend() {
    const char* env = std::getenv("REINSURE_SIMD");
    if (env != nullptr) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && cpu_has(Backend::avx2)) return Backend::avx2;
        if (v == "neon" && cpu_has(Backend::neon)) return Backend::neon;
    }
    if (cpu_has(Backend::avx2)) return Backend::avx2;
    if (cpu_has(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

const Table& active() { return table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

double dot(std::span<const double> w, std::span<const double> x) { return active().dot(w, x); }

MinIndex min_pair_sum(std::span<const double> x, std::span<const double> y) {
    return active().min_pair_sum(x, y);
}

MinIndex min_layered_pair_sum(std::span<const double> x, std::span<const double> y,
                              Layer fx, Layer fy) {
    return active().min_layered_pair_sum(x, y, fx, fy);
}

void accumulate_layered(std::span<double> acc, std::span<const double> x, Layer f) {
    active().accumulate_layered(acc, x, f);
}

void add_into(std::span<double> acc, std::span<const double> x) { active().add_into(acc, x); }

MinIndex argmin(std::span<const double> x) { return active().argmin(x); }

Backend active_backend() { return current().load(); }

bool backend_supported(Backend b) { return cpu_has(b); }

void set_backend(Backend b) {
    if (!cpu_has(b)) {
        throw DomainError("kernel backend not available: " + std::string(backend_name(b)));
    }
    current().store(b);
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
        case Backend::neon:
            return "neon";
    }
    return "unknown";
}

}  // namespace reinsure::kernels
