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

#include <random>

#include "pwl/linalg.hpp"
#include "pwl/states.hpp"

namespace pwl::testing {

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            m(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    const auto a = random_matrix(n, rng);
    return a + dagger(a);
}

/// Ginibre-ensemble density operator; full rank with probability one.
inline DensityOperator random_density(std::mt19937_64 &rng) {
    const auto g = random_matrix(kStateDim, rng);
    ComplexMatrix m = g * dagger(g);
    m *= Complex(1.0 / trace(m).real());
    m = (m + dagger(m)) * Complex(0.5);
    return DensityOperator::from_matrix(m);
}

}  // namespace pwl::testing
