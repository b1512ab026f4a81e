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
#include <functional>
#include <span>

namespace reinsure {

inline constexpr double kTieTolerance = 1e-12;

// True when v is within the tie tolerance of ref.
bool ties_with(double v, double ref, double rel_tol = kTieTolerance);

// Smallest index whose value ties with the minimum; values must be nonempty.
std::size_t first_min_index(std::span<const double> values, double rel_tol = kTieTolerance);

struct Point1D {
    double x;
    double value;
};

// Golden-section search on [lo, hi]. Returns the best point seen, preferring
// smaller x among ties.
Point1D golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12,
                       int max_iter = 200);

}  // namespace reinsure
