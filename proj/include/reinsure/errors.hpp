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

#include <stdexcept>
#include <string>

namespace reinsure {

class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
    using Error::Error;
};

// An integral or risk measure that is infinite.
class DivergenceError : public Error {
 public:
    using Error::Error;
};

// Problem too large for an exhaustive routine.
class SizeError : public Error {
 public:
    using Error::Error;
};

class ConfigError : public Error {
 public:
    using Error::Error;
};

class SolverError : public Error {
 public:
    using Error::Error;
};

}  // namespace reinsure
