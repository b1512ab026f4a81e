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
#include <exception>
#include <thread>
#include <vector>

namespace reinsure {

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
// handled by exactly one call, so callers writing to slot i get results that do
// not depend on the worker count.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
    const std::size_t w = workers <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    if (w <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(w);
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        threads.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += w) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

template <class F>
std::vector<double> parallel_map(std::size_t count, int workers, F&& f) {
    std::vector<double> out(count);
    parallel_for(count, workers, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace reinsure
