// Copyright 2026 The ppt-witness-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pwl {

/// Raised when a caller violates a precondition: bad dimensions, parameters
/// out of range, matrices that are not valid states.
class InvalidArgument : public std::invalid_argument {
   public:
    explicit InvalidArgument(const std::string &what) : std::invalid_argument(what) {
    }
};

/// Raised when a numerical routine fails on valid input (e.g. the
/// eigensolver does not converge, normal equations are singular).
class NumericalError : public std::runtime_error {
   public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace pwl
