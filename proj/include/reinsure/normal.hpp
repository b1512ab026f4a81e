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

namespace reinsure::normal {

double pdf(double x);
double cdf(double x);
// Standard normal quantile; p = 0 and p = 1 map to -inf and +inf.
// Inverse complementary error function from Boost.Math, within a few ulp.
double quantile(double p);

}  // namespace reinsure::normal
