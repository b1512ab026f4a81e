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
#include <limits>
#include <span>
#include <string_view>

namespace reinsure::kernels {

enum class Backend { scalar, avx2, neon };

// x -> min(max(x - retention, 0), limit). limit may be +inf.
struct Layer {
    double retention = 0.0;
    double limit = std::numeric_limits<double>::infinity();
};

struct MinIndex {
    double value;
    std::size_t index;
};

// Smallest index wins ties in every argmin-style kernel.
double dot(std::span<const double> w, std::span<const double> x);
MinIndex min_pair_sum(std::span<const double> x, std::span<const double> y);
MinIndex min_layered_pair_sum(std::span<const double> x, std::span<const double> y,
                              Layer fx, Layer fy);
void accumulate_layered(std::span<double> acc, std::span<const double> x, Layer f);
void add_into(std::span<double> acc, std::span<const double> x);
MinIndex argmin(std::span<const double> x);

Backend active_backend();
bool backend_supported(Backend b);
// Throws DomainError if b is not available on this machine.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

}  // namespace reinsure::kernels
