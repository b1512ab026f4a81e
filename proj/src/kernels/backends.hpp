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

#include <cstddef>
#include <span>

#include "reinsure/kernels.hpp"

namespace reinsure::kernels {

struct Table {
    double (*dot)(std::span<const double>, std::span<const double>);
    MinIndex (*min_pair_sum)(std::span<const double>, std::span<const double>);
    MinIndex (*min_layered_pair_sum)(std::span<const double>, std::span<const double>,
                                     Layer, Layer);
    void (*accumulate_layered)(std::span<double>, std::span<const double>, Layer);
    void (*add_into)(std::span<double>, std::span<const double>);
    MinIndex (*argmin)(std::span<const double>);
};

inline double layered(double v, Layer f) {
    double d = v - f.retention;
    d = d > 0.0 ? d : 0.0;
    return d < f.limit ? d : f.limit;
}

#define REINSURE_KERNEL_DECLS                                                         \
    double dot(std::span<const double> w, std::span<const double> x);                 \
    MinIndex min_pair_sum(std::span<const double> x, std::span<const double> y);      \
    MinIndex min_layered_pair_sum(std::span<const double> x, std::span<const double> y, \
                                  Layer fx, Layer fy);                                \
    void accumulate_layered(std::span<double> acc, std::span<const double> x, Layer f); \
    void add_into(std::span<double> acc, std::span<const double> x);                  \
    MinIndex argmin(std::span<const double> x);                                       \
    const Table& table();

namespace scalar {
REINSURE_KERNEL_DECLS
}
namespace avx2 {
REINSURE_KERNEL_DECLS
}
namespace neon {
REINSURE_KERNEL_DECLS
}

#undef REINSURE_KERNEL_DECLS

}  // namespace reinsure::kernels
