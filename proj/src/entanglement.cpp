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

#include "pwl/entanglement.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "pwl/errors.hpp"

namespace pwl {

const std::array<Observable, 3> &observables() {
    static const std::array<Observable, 3> kObservables = {
        Observable{WitnessLabel::kB1, tensor({pauli::I(), pauli::X(), pauli::X()})},
        Observable{WitnessLabel::kB2, tensor({pauli::I(), pauli::Y(), pauli::Y()})},
        Observable{WitnessLabel::kB3, tensor({pauli::Z(), pauli::Z(), pauli::Z()})},
    };
    return kObservables;
}

double expectation(const DensityOperator &rho, const Observable &o, double imag_tol) {
    const Complex v = trace_product(rho.matrix(), o.matrix);
    if (std::abs(v.imag()) > imag_tol) {
        throw NumericalError(fmt::format("expectation value has imaginary part {}", v.imag()));
    }
    return v.real();
}

WitnessReport witness_from_expectations(double b1, double b2, double b3, double verdict_tol) {
    WitnessReport r;
    r.b1 = b1;
    r.b2 = b2;
    r.b3 = b3;
    for (std::size_t k = 0; k < kWitnessSigns.size(); ++k) {
        r.four_values[k] = std::abs(b1 + kWitnessSigns[k][0] * b2 + kWitnessSigns[k][1] * b3);
        // Strict comparison keeps the first combination on ties.
        if (k == 0 || r.four_values[k] > r.max_value) {
            r.max_value = r.four_values[k];
            r.max_index = static_cast<int>(k);
        }
    }
    r.violated = r.max_value > 1.0 + verdict_tol;
    return r;
}

WitnessReport witness(const DensityOperator &rho, double verdict_tol) {
    const auto &obs = observables();
    return witness_from_expectations(expectation(rho, obs[0]), expectation(rho, obs[1]), expectation(rho, obs[2]),
                                     verdict_tol);
}

double max_violation_analytic(BParam b) {
    const double x = b.value();
    return (2.0 * std::sqrt(1.0 - x * x) + 1.0 - x) / (1.0 + 7.0 * x);
}

double detection_window() {
    return 1.0 / std::sqrt(17.0);
}

std::string PptReport::cut_label() const {
    if (dims.size() == 2) {
        return fmt::format("{}|{}", dims[0], dims[1]);
    }
    // Three-qubit view: name the transposed qubit against the rest.
    std::string rest;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k != transposed_factor) {
            rest += std::to_string(k + 1);
        }
    }
    return fmt::format("{}|{}", transposed_factor + 1, rest);
}

PptReport ppt_check(const DensityOperator &rho, const std::vector<std::size_t> &dims, std::size_t which,
                    double ppt_tol) {
    PptReport r;
    r.dims = dims;
    r.transposed_factor = which;
    r.min_eigenvalue = min_eigenvalue(partial_transpose(rho.matrix(), dims, which));
    r.is_ppt = r.min_eigenvalue >= -ppt_tol;
    return r;
}

PptReport ppt_check(const DensityOperator &rho, std::size_t which, double ppt_tol) {
    return ppt_check(rho, rho.dims(), which, ppt_tol);
}

namespace {

std::array<Complex, 2> haar_qubit(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<Complex, 2> v{};
    double norm2 = 0;
    while (norm2 < 1e-24) {
        v = {Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng))};
        norm2 = std::norm(v[0]) + std::norm(v[1]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    return {v[0] * inv, v[1] * inv};
}

ComplexMatrix random_product_projector(std::mt19937_64 &rng) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t q = 0; q < kNumQubits; ++q) {
        const auto v = haar_qubit(rng);
        out = tensor(out, ComplexMatrix::outer(v, v));
    }
    return out;
}

}  // namespace

DensityOperator random_product_state(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return DensityOperator::from_matrix(random_product_projector(rng));
}

DensityOperator random_separable_mixture(std::uint64_t seed, int max_terms) {
    if (max_terms < 1) {
        throw InvalidArgument("random_separable_mixture: max_terms must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::exponential_distribution<double> weight(1.0);
    const int terms = count(rng);
    std::vector<double> w(static_cast<std::size_t>(terms));
    double total = 0;
    for (auto &x : w) {
        x = weight(rng);
        total += x;
    }
    ComplexMatrix m(kStateDim);
    for (double x : w) {
        m += random_product_projector(rng) * Complex(x / total);
    }
    return DensityOperator::from_matrix(std::move(m));
}

}  // namespace pwl
