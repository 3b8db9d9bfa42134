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

#include "pwl/states.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pwl/entanglement.hpp"
#include "pwl/errors.hpp"
#include "test_util.hpp"

using namespace pwl;

namespace {

// The published 8x8 matrix of the family, transcribed row by row.
ComplexMatrix published_sigma(double b) {
    const double d = (1 + b) / 2;
    const double s = std::sqrt(1 - b * b) / 2;
    ComplexMatrix m{
        {b, 0, 0, 0, 0, b, 0, 0},  //
        {0, b, 0, 0, 0, 0, b, 0},  //
        {0, 0, b, 0, 0, 0, 0, b},  //
        {0, 0, 0, b, 0, 0, 0, 0},  //
        {0, 0, 0, 0, d, 0, 0, s},  //
        {b, 0, 0, 0, 0, b, 0, 0},  //
        {0, b, 0, 0, 0, 0, b, 0},  //
        {0, 0, b, 0, s, 0, 0, d},
    };
    return m * Complex(1 / (1 + 7 * b));
}

}  // namespace

TEST(BParam, range) {
    EXPECT_NO_THROW(BParam(0.0));
    EXPECT_NO_THROW(BParam(1.0));
    EXPECT_THROW(BParam(-0.01), InvalidArgument);
    EXPECT_THROW(BParam(1.01), InvalidArgument);
    EXPECT_THROW(BParam(std::nan("")), InvalidArgument);
}

TEST(PureState, validation) {
    EXPECT_THROW(PureState::from_amplitudes({1, 0}), InvalidArgument);
    EXPECT_THROW(PureState::from_amplitudes({1, 1, 0, 0, 0, 0, 0, 0}), InvalidArgument);
    EXPECT_THROW(PureState::basis(8), InvalidArgument);
    EXPECT_THROW(PureState::basis("01"), InvalidArgument);
    EXPECT_THROW(PureState::basis("012"), InvalidArgument);
    EXPECT_EQ(PureState::basis("011").amplitudes()[3], Complex(1.0));
}

TEST(PsiK, amplitudes_and_orthogonality) {
    const auto psi1 = psi_k(1);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(std::abs(psi1.amplitudes()[i] - Complex((i == 0 || i == 5) ? M_SQRT1_2 : 0.0)), 0, 1e-15);
    }
    EXPECT_EQ(overlap(psi_k(1), psi_k(2)), Complex(0.0));
    EXPECT_THROW(psi_k(0), InvalidArgument);
    EXPECT_THROW(psi_k(4), InvalidArgument);
}

TEST(PsiK, psi3_reduced_to_qubits_1_3_is_bell_pair) {
    const std::array<std::size_t, 3> dims = {2, 2, 2};
    const std::array<std::size_t, 2> keep = {0, 2};
    const auto reduced = partial_trace(psi_k(3).projector(), dims, keep);
    // Tracing out qubit 2 (bit 0 vs 1) leaves (|00> + |11>)/sqrt2 on qubits 1, 3.
    const std::array<Complex, 4> bell = {M_SQRT1_2, 0, 0, M_SQRT1_2};
    EXPECT_LE(max_abs_diff(reduced, ComplexMatrix::outer(bell, bell)), 1e-15);
}

TEST(PsiK, psi1_reduced_to_qubit_1_is_maximally_mixed) {
    const std::array<std::size_t, 3> dims = {2, 2, 2};
    const std::array<std::size_t, 1> keep = {0};
    EXPECT_LE(max_abs_diff(partial_trace(psi_k(1).projector(), dims, keep), pauli::I() * Complex(0.5)), 1e-15);
}

TEST(PhiB, amplitudes) {
    for (double b : {0.0, 0.04, 0.5, 1.0}) {
        const auto phi = phi_b(BParam(b));
        for (std::size_t i = 0; i < 8; ++i) {
            double expected = 0;
            if (i == 4) {
                expected = std::sqrt(1 + b) / std::sqrt(2.0);
            } else if (i == 7) {
                expected = std::sqrt(1 - b) / std::sqrt(2.0);
            }
            EXPECT_NEAR(std::abs(phi.amplitudes()[i] - Complex(expected)), 0, 1e-15) << b << " " << i;
        }
    }
}

TEST(MixtureWeights, formulas_and_endpoints) {
    const auto w0 = mixture_weights(BParam(0)).as_array();
    const std::array<double, 5> e0 = {0, 0, 0, 0, 1};
    const auto w1 = mixture_weights(BParam(1)).as_array();
    const std::array<double, 5> e1 = {0.25, 0.25, 0.25, 0.125, 0.125};
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_NEAR(w0[k], e0[k], 1e-15);
        EXPECT_NEAR(w1[k], e1[k], 1e-15);
    }
    for (int i = 0; i <= 100; ++i) {
        const double b = i / 100.0;
        const auto w = mixture_weights(BParam(b));
        double sum = 0;
        for (double x : w.as_array()) {
            EXPECT_GE(x, 0.0);
            sum += x;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
        EXPECT_NEAR(w.w_psi2, 2 * b / (7 * b + 1), 1e-15);
        EXPECT_NEAR(w.w_011, b / (7 * b + 1), 1e-15);
    }
}

TEST(SigmaB, dual_construction_over_101_values) {
    double worst = 0;
    for (int i = 0; i <= 100; ++i) {
        const BParam b(i / 100.0);
        worst = std::max(worst, frobenius_distance(sigma_b_mixture(b).matrix(), sigma_b_matrix(b).matrix()));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(SigmaB, matches_published_matrix) {
    for (int i = 0; i <= 20; ++i) {
        const double b = i / 20.0;
        EXPECT_LE(max_abs_diff(sigma_b_matrix(BParam(b)).matrix(), published_sigma(b)), 1e-15) << b;
        EXPECT_LE(max_abs_diff(sigma_b_mixture(BParam(b)).matrix(), published_sigma(b)), 1e-12) << b;
    }
    const double b = 0.04;
    const ComplexMatrix m = sigma_b_matrix(BParam(b)).matrix();
    EXPECT_NEAR(m(4, 4).real(), (1 + b) / 2 / (1 + 7 * b), 1e-15);
    EXPECT_NEAR(m(4, 7).real(), std::sqrt(1 - b * b) / 2 / (1 + 7 * b), 1e-15);
}

TEST(SigmaB, validity_and_b0_support) {
    for (int i = 0; i <= 10; ++i) {
        const ComplexMatrix m = sigma_b_matrix(BParam(i / 10.0)).matrix();
        EXPECT_TRUE(m.is_hermitian(1e-12));
        EXPECT_NEAR(trace(m).real(), 1.0, 1e-12);
        EXPECT_GE(min_eigenvalue(m), -1e-10);
    }
    const ComplexMatrix m0 = sigma_b_matrix(BParam(0)).matrix();
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            const bool support = (r == 4 || r == 7) && (c == 4 || c == 7);
            EXPECT_EQ(m0(r, c), Complex(support ? 0.5 : 0.0));
        }
    }
    EXPECT_LE(max_abs_diff(sigma_b_mixture(BParam(0)).matrix(), phi_b(BParam(0)).projector()), 1e-15);
}

TEST(SigmaB, b0_qubit1_marginal_is_excited) {
    const std::array<std::size_t, 3> dims = {2, 2, 2};
    const std::array<std::size_t, 1> keep = {0};
    const auto q1 = partial_trace(sigma_b_matrix(BParam(0)).matrix(), dims, keep);
    const ComplexMatrix one{{0, 0}, {0, 1}};
    EXPECT_LE(max_abs_diff(q1, one), 1e-15);
}

TEST(DensityOperator, validation) {
    EXPECT_THROW(DensityOperator::from_matrix(pauli::I()), InvalidArgument);
    EXPECT_THROW(DensityOperator::from_matrix(ComplexMatrix::identity(8)), InvalidArgument);
    auto m = ComplexMatrix::identity(8) * Complex(1.0 / 8);
    m(0, 1) = Complex(0, 0.01);
    EXPECT_THROW(DensityOperator::from_matrix(m), InvalidArgument);
    // diag(0.5, 0.5, -0.125, ...) style negative eigenvalue.
    auto neg = ComplexMatrix::zero(8);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    EXPECT_THROW(DensityOperator::from_matrix(neg), InvalidArgument);
    auto dust = ComplexMatrix::zero(8);
    dust(0, 0) = 1 + 1e-11;
    dust(1, 1) = -1e-11;
    EXPECT_NO_THROW(DensityOperator::from_matrix(dust));
}

TEST(Pps, endpoints_and_linearity) {
    const auto sigma = sigma_b_matrix(BParam(0.12));
    EXPECT_LE(max_abs_diff(pps(1.0, sigma).matrix(), sigma.matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(pps(1e-12, sigma).matrix(), DensityOperator::maximally_mixed().matrix()), 1e-12);
    EXPECT_THROW(pps(0.0, sigma), InvalidArgument);
    EXPECT_THROW(pps(1.5, sigma), InvalidArgument);
    for (double eps : {1e-5, 0.5, 1.0}) {
        const auto mixed = PseudoPureState{eps, sigma}.assemble();
        for (const auto &o : observables()) {
            EXPECT_NEAR(expectation(mixed, o), eps * expectation(sigma, o), 1e-12);
        }
    }
}

TEST(Fidelity, identities) {
    const auto sigma = sigma_b_matrix(BParam(0.04));
    EXPECT_NEAR(fidelity(sigma, sigma), 1.0, 1e-12);
    const auto a = DensityOperator::from_pure(PureState::basis("000"));
    const auto b = DensityOperator::from_pure(PureState::basis("011"));
    EXPECT_NEAR(fidelity(a, b), 0.0, 1e-14);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-14);
    const auto mixed = DensityOperator::maximally_mixed();
    EXPECT_NEAR(fidelity(a, mixed), 1.0 / 8, 1e-12);
}

TEST(Fidelity, pure_states_reduce_to_overlap) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    auto random_pure = [&] {
        std::vector<Complex> v(8);
        double n = 0;
        for (auto &x : v) {
            x = Complex(normal(rng), normal(rng));
            n += std::norm(x);
        }
        for (auto &x : v) {
            x /= std::sqrt(n);
        }
        return PureState::from_amplitudes(v);
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_pure();
        const auto q = random_pure();
        const double expected = std::norm(overlap(p, q));
        EXPECT_NEAR(pure_fidelity(p, q), expected, 1e-14);
        EXPECT_NEAR(fidelity(DensityOperator::from_pure(p), DensityOperator::from_pure(q)), expected, 1e-9);
    }
}

TEST(Fidelity, bounds_and_symmetry_on_random_pairs) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = pwl::testing::random_density(rng);
        const auto s = pwl::testing::random_density(rng);
        const double f = fidelity(r, s);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0 + 1e-9);
        EXPECT_NEAR(f, fidelity(s, r), 1e-9);
    }
}
