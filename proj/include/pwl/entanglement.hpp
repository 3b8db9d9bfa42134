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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pwl/linalg.hpp"
#include "pwl/states.hpp"

namespace pwl {

inline constexpr double kVerdictTol = 1e-9;
inline constexpr double kPptTol = 1e-10;
inline constexpr double kExpectationImagTol = 1e-10;

enum class WitnessLabel { kB1, kB2, kB3 };

struct Observable {
    WitnessLabel label;
    ComplexMatrix matrix;
};

/// B1 = I (x) X (x) X, B2 = I (x) Y (x) Y, B3 = Z (x) Z (x) Z.
const std::array<Observable, 3> &observables();

/// Tr(rho O). Throws NumericalError if the imaginary part exceeds `imag_tol`.
double expectation(const DensityOperator &rho, const Observable &o, double imag_tol = kExpectationImagTol);

/// Sign patterns applied to (B2, B3), in report order.
inline constexpr std::array<std::array<int, 2>, 4> kWitnessSigns = {{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};

struct WitnessReport {
    double b1 = 0;
    double b2 = 0;
    double b3 = 0;
    /// |<B1> + s2 <B2> + s3 <B3>| for each entry of kWitnessSigns.
    std::array<double, 4> four_values{};
    double max_value = 0;
    /// Index into kWitnessSigns of the first combination reaching max_value.
    int max_index = 0;
    bool violated = false;
};

/// Evaluates the four separability inequalities from the three expectation
/// values. Separable states satisfy every one with value <= 1.
WitnessReport witness_from_expectations(double b1, double b2, double b3, double verdict_tol = kVerdictTol);

WitnessReport witness(const DensityOperator &rho, double verdict_tol = kVerdictTol);

/// Closed form of the maximal inequality value on the family:
/// (2 sqrt(1 - b^2) + 1 - b) / (1 + 7b).
double max_violation_analytic(BParam b);

/// Upper end 1/sqrt(17) of the b range in which the inequality detects the
/// family.
double detection_window();

struct PptReport {
    std::vector<std::size_t> dims;
    std::size_t transposed_factor = 0;
    double min_eigenvalue = 0;
    bool is_ppt = true;

    std::string cut_label() const;
};

PptReport ppt_check(const DensityOperator &rho, const std::vector<std::size_t> &dims, std::size_t which,
                    double ppt_tol = kPptTol);

/// Convenience: transpose `which` in the operator's own partition.
PptReport ppt_check(const DensityOperator &rho, std::size_t which, double ppt_tol = kPptTol);

/// |a><a| (x) |c><c| (x) |d><d| with Haar-random single-qubit states,
/// deterministic per seed.
DensityOperator random_product_state(std::uint64_t seed);

/// Random convex mixture of 1..max_terms product states, deterministic per seed.
DensityOperator random_separable_mixture(std::uint64_t seed, int max_terms = 8);

}  // namespace pwl
