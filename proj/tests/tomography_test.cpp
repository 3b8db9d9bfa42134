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

#include "pwl/tomography.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "pwl/circuits.hpp"
#include "pwl/errors.hpp"
#include "test_util.hpp"

using namespace pwl;

namespace {

double max_abs(const ReadoutRecord &r) {
    double m = 0;
    for (const auto &a : r.amplitudes) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

double mean_error(const DensityOperator &rho, std::int64_t shots, int seeds) {
    double sum = 0;
    for (int s = 0; s < seeds; ++s) {
        const auto rec = reconstruct(acquire(rho, shots, 1000 + s));
        sum += frobenius_distance(rec.rho_est.matrix(), rho.matrix());
    }
    return sum / seeds;
}

}  // namespace

TEST(Settings, labels_and_unitaries) {
    ASSERT_EQ(all_settings().size(), 7u);
    for (auto s : all_settings()) {
        EXPECT_EQ(parse_setting(setting_label(s)), s);
        const auto u = setting_unitary(s);
        EXPECT_LE(max_abs_diff(dagger(u) * u, ComplexMatrix::identity(8)), 1e-12);
    }
    EXPECT_THROW(parse_setting("ZZZ"), InvalidArgument);
    EXPECT_EQ(setting_unitary(TomoSetting::kIII), ComplexMatrix::identity(8));
    // YII acts on qubit 1 only.
    EXPECT_LE(max_abs_diff(setting_unitary(TomoSetting::kYII), gate_unitary(Gate::rotation(1, M_PI_2, M_PI_2))),
              1e-15);
}

TEST(Transitions, single_quantum_pairs) {
    const auto &t = transitions();
    for (std::size_t k = 0; k < t.size(); ++k) {
        const std::size_t bit = std::size_t{1} << (3 - t[k].spin);
        EXPECT_EQ(t[k].spin, static_cast<int>(k / 4) + 1);
        EXPECT_EQ(t[k].bra & bit, 0u);
        EXPECT_EQ(t[k].ket, t[k].bra | bit);
        if (k % 4 != 0) {
            EXPECT_LT(t[k - 1].bra, t[k].bra);
        }
    }
}

TEST(Readout, examples) {
    for (auto s : all_settings()) {
        EXPECT_LE(max_abs(simulate_readout(DensityOperator::maximally_mixed(), s)), 1e-16);
    }
    EXPECT_EQ(max_abs(simulate_readout(DensityOperator::from_pure(PureState::basis(0)), TomoSetting::kIII)), 0.0);
    const auto psi1 = DensityOperator::from_pure(psi_k(1));
    EXPECT_EQ(max_abs(simulate_readout(psi1, TomoSetting::kIII)), 0.0);
    EXPECT_GT(max_abs(simulate_readout(psi1, TomoSetting::kXXX)), 0.1);
}

TEST(Readout, amplitudes_are_rotated_matrix_elements) {
    std::mt19937_64 rng(2);
    const auto rho = pwl::testing::random_density(rng);
    for (auto s : all_settings()) {
        const auto rotated = conjugate(setting_unitary(s), rho.matrix());
        const auto rec = simulate_readout(rho, s);
        for (std::size_t k = 0; k < kAmplitudesPerRecord; ++k) {
            const auto &t = transitions()[k];
            EXPECT_EQ(rec.amplitudes[k], rotated(t.bra, t.ket));
        }
    }
}

TEST(Readout, shot_noise_has_expected_spread) {
    std::mt19937_64 rng(4);
    const auto rho = DensityOperator::maximally_mixed();
    const std::int64_t shots = 10000;
    double sum_sq = 0;
    int n = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto rec = simulate_readout(rho, TomoSetting::kXYX, shots, rng);
        EXPECT_EQ(rec.shots, shots);
        for (const auto &a : rec.amplitudes) {
            sum_sq += a.real() * a.real() + a.imag() * a.imag();
            n += 2;
        }
    }
    EXPECT_NEAR(std::sqrt(sum_sq / n), 1.0 / std::sqrt(double(shots)), 0.05 / std::sqrt(double(shots)));
    EXPECT_THROW(simulate_readout(rho, TomoSetting::kIII, 0, rng), InvalidArgument);
}

TEST(DesignMatrix, rank_and_linearity) {
    const auto &a = design_matrix();
    EXPECT_EQ(a.rows(), 168u);
    EXPECT_EQ(a.cols(), 64u);
    EXPECT_EQ(a.traceless_rank(), 63u);
    EXPECT_GT(a.normal_spectrum().front(), 1e-3 * a.normal_spectrum().back());

    for (double y : a.apply(DensityOperator::maximally_mixed().matrix())) {
        EXPECT_NEAR(y, 0.0, 1e-16);
    }
    std::mt19937_64 rng(12);
    const auto h1 = pwl::testing::random_hermitian(8, rng);
    const auto h2 = pwl::testing::random_hermitian(8, rng);
    const auto y1 = a.apply(h1);
    const auto y2 = a.apply(h2);
    const auto y = a.apply(h1 * Complex(0.3) + h2 * Complex(-1.7));
    for (std::size_t i = 0; i < y.size(); ++i) {
        EXPECT_NEAR(y[i], 0.3 * y1[i] - 1.7 * y2[i], 1e-12);
    }
}

TEST(DesignMatrix, columns_are_pauli_coordinates) {
    // Column j holds the readout of P_j / 8, so A c reproduces the readout
    // of rho = (I + sum c_j P_j) / 8.
    const auto &a = design_matrix();
    std::mt19937_64 rng(6);
    const auto rho = pwl::testing::random_density(rng);
    const auto y = readout_vector(acquire(rho));
    std::vector<double> coeffs(64);
    for (std::size_t j = 1; j < 64; ++j) {
        coeffs[j] = trace_product(rho.matrix(), a.basis_operator(j)).real();
    }
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double acc = 0;
        for (std::size_t j = 0; j < 64; ++j) {
            acc += a(r, j) * coeffs[j];
        }
        EXPECT_NEAR(acc, y[r], 1e-13);
    }
}

TEST(Reconstruct, noiseless_round_trip_random_states) {
    std::mt19937_64 rng(2718);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = pwl::testing::random_density(rng);
        const auto rec = reconstruct(acquire(rho));
        worst = std::max(worst, frobenius_distance(rec.rho_est.matrix(), rho.matrix()));
        EXPECT_FALSE(rec.projected);
        EXPECT_LE(rec.residual_norm, 1e-10);
    }
    EXPECT_LE(worst, 1e-8);
}

TEST(Reconstruct, noiseless_family_member) {
    const auto sigma = sigma_b_matrix(BParam(0.12));
    const auto rec = reconstruct(acquire(sigma));
    EXPECT_LE(frobenius_distance(rec.rho_est.matrix(), sigma.matrix()), 1e-8);
    EXPECT_FALSE(rec.projected);
    EXPECT_NEAR(witness_from_tomography(acquire(sigma_b_matrix(BParam(0.04)))).max_value, 2.311, 1e-3);
    const auto ground = witness_from_tomography(acquire(DensityOperator::from_pure(PureState::basis(0))));
    EXPECT_NEAR(ground.max_value, 1.0, 1e-9);
    EXPECT_FALSE(ground.violated);
}

TEST(Reconstruct, high_shot_fidelity) {
    const auto sigma = sigma_b_matrix(BParam(0.12));
    double sum = 0;
    for (int s = 0; s < 30; ++s) {
        const auto rec = reconstruct(acquire(sigma, 1000000, s));
        EXPECT_TRUE(rec.rho_est.matrix().is_hermitian(1e-12));
        EXPECT_NEAR(trace(rec.rho_est.matrix()).real(), 1.0, 1e-12);
        sum += fidelity(sigma, rec.rho_est);
    }
    EXPECT_GE(sum / 30, 0.99);
}

TEST(Reconstruct, projection_cost_bounded_by_residual) {
    const auto sigma = sigma_b_matrix(BParam(0.04));
    const auto &design = design_matrix();
    int projected = 0;
    for (int s = 0; s < 30; ++s) {
        const auto data = acquire(sigma, 10000, s);
        // Raw least-squares estimate, assembled here from the Pauli coordinates.
        const auto coeffs = design.solve(readout_vector(data));
        ComplexMatrix raw = ComplexMatrix::identity(8) * Complex(1.0 / 8);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            raw += design.basis_operator(j + 1) * Complex(coeffs[j] / 8);
        }
        const auto rec = reconstruct(data);
        projected += rec.projected;
        const double raw_err = frobenius_distance(raw, sigma.matrix());
        const double err = frobenius_distance(rec.rho_est.matrix(), sigma.matrix());
        EXPECT_LE(err - raw_err, rec.residual_norm);
    }
    // The family is rank deficient, so shot noise pushes estimates outside the
    // state space.
    EXPECT_GT(projected, 0);
}

TEST(Reconstruct, shot_noise_scaling) {
    std::mt19937_64 rng(99);
    const auto rho = pwl::testing::random_density(rng);
    const std::array<double, 3> shots = {1e4, 1e5, 1e6};
    std::array<double, 3> lx{}, ly{};
    for (std::size_t i = 0; i < 3; ++i) {
        lx[i] = std::log10(shots[i]);
        ly[i] = std::log10(mean_error(rho, static_cast<std::int64_t>(shots[i]), 30));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3;
    const double my = (ly[0] + ly[1] + ly[2]) / 3;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    EXPECT_NEAR(num / den, -0.5, 0.15);
}

TEST(Dataset, validation) {
    auto data = acquire(DensityOperator::maximally_mixed());
    EXPECT_NO_THROW(data.validate());
    data.records.pop_back();
    EXPECT_THROW(data.validate(), InvalidArgument);
    data.records.push_back(data.records.front());
    EXPECT_THROW(data.validate(), InvalidArgument);
    EXPECT_THROW(reconstruct(data), InvalidArgument);
}

TEST(Dataset, json_round_trip) {
    const auto sigma = sigma_b_matrix(BParam(0.08));
    const auto data = acquire(sigma, 50000, 17);
    const auto back = dataset_from_json(dataset_to_json(data));
    EXPECT_EQ(back.seed, data.seed);
    ASSERT_EQ(back.records.size(), 7u);
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_EQ(back.records[i].setting, data.records[i].setting);
        EXPECT_EQ(back.records[i].amplitudes, data.records[i].amplitudes);
        EXPECT_EQ(back.records[i].shots, data.records[i].shots);
    }
    EXPECT_EQ(reconstruct(back).rho_est.matrix(), reconstruct(data).rho_est.matrix());
}

TEST(Dataset, json_errors) {
    EXPECT_THROW(dataset_from_json("not json"), InvalidArgument);
    EXPECT_THROW(dataset_from_json("{}"), InvalidArgument);
    EXPECT_THROW(dataset_from_json("[]"), InvalidArgument);
    EXPECT_THROW(dataset_from_json(R"([{"setting":"ZZZ","spin":1,"bra_index":0,"ket_index":4,"re":0,"im":0}])"),
                 InvalidArgument);
    EXPECT_THROW(dataset_from_json(R"([{"setting":"III","spin":1,"bra_index":0,"ket_index":1,"re":0,"im":0}])"),
                 InvalidArgument);
}
