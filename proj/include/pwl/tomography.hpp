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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pwl/entanglement.hpp"
#include "pwl/linalg.hpp"
#include "pwl/states.hpp"

namespace pwl {

/// The seven preparatory settings. Each letter is the action on one qubit:
/// I = nothing, X = pi/2 pulse with phase x, Y = pi/2 pulse with phase y.
enum class TomoSetting { kIII, kXXX, kIIY, kXYX, kYII, kXXY, kIYY };

inline constexpr std::size_t kNumSettings = 7;
inline constexpr std::size_t kTransitionsPerSpin = 4;
inline constexpr std::size_t kAmplitudesPerRecord = kNumQubits * kTransitionsPerSpin;

const std::array<TomoSetting, kNumSettings> &all_settings();
std::string_view setting_label(TomoSetting s);
TomoSetting parse_setting(std::string_view label);

ComplexMatrix setting_unitary(TomoSetting s);

/// A single-quantum transition of one spin: basis states `bra` and `ket`
/// differ only in that spin's bit, which is 0 in `bra` and 1 in `ket`.
struct Transition {
    int spin;
    std::size_t bra;
    std::size_t ket;
};

/// Transitions in record order: spin 1, 2, 3; within a spin by ascending bra.
const std::array<Transition, kAmplitudesPerRecord> &transitions();

struct ReadoutRecord {
    TomoSetting setting = TomoSetting::kIII;
    /// rho'[bra][ket] of the rotated state for each entry of transitions().
    std::array<Complex, kAmplitudesPerRecord> amplitudes{};
    std::optional<std::int64_t> shots;
};

/// Noiseless readout: the single-quantum coherences of U_s rho U_s^dagger.
ReadoutRecord simulate_readout(const DensityOperator &rho, TomoSetting s);

/// Adds independent N(0, 1/shots) noise to every real and imaginary part.
ReadoutRecord simulate_readout(const DensityOperator &rho, TomoSetting s, std::int64_t shots, std::mt19937_64 &rng);

struct TomoDataset {
    std::vector<ReadoutRecord> records;
    std::optional<std::uint64_t> seed;

    /// Throws InvalidArgument unless every setting appears exactly once.
    void validate() const;
};

/// Runs all seven settings. With `shots`, a single rng seeded by `seed` is
/// consumed in setting order.
TomoDataset acquire(const DensityOperator &rho, std::optional<std::int64_t> shots = std::nullopt,
                    std::uint64_t seed = 0);

inline constexpr std::size_t kReadoutReals = 2 * kNumSettings * kAmplitudesPerRecord;  // 168
inline constexpr std::size_t kStateParams = kStateDim * kStateDim;                       // 64

/// Real-linear map from Hermitian operators to the 168 readout numbers.
///
/// The state space is coordinatized by Pauli strings: column 0 is the
/// identity component (the trace), columns 1..63 are the traceless strings in
/// IXYZ lexicographic order, with rho = (I + sum_j c_j P_j) / 8 and
/// c_j = Tr(rho P_j). Row order is setting, then transition, then (re, im).
class DesignMatrix {
   public:
    static const DesignMatrix &instance();

    std::size_t rows() const {
        return kReadoutReals;
    }
    std::size_t cols() const {
        return kStateParams;
    }
    double operator()(std::size_t r, std::size_t c) const {
        return a_[r * kStateParams + c];
    }

    /// Readout vector of an arbitrary Hermitian 8x8 operator.
    std::vector<double> apply(const ComplexMatrix &h) const;

    /// Numerical rank of the traceless block, from the spectrum of its
    /// normal matrix.
    std::size_t traceless_rank(double rel_tol = 1e-10) const;

    /// Eigenvalues of the traceless normal matrix A^T A, ascending.
    const std::vector<double> &normal_spectrum() const {
        return normal_eigenvalues_;
    }

    /// Least-squares traceless coefficients for a readout vector.
    std::vector<double> solve(const std::vector<double> &y) const;

    /// Pauli string of column c (0 = identity).
    const ComplexMatrix &basis_operator(std::size_t c) const {
        return paulis_[c];
    }

   private:
    DesignMatrix();
    std::vector<double> a_;
    std::vector<ComplexMatrix> paulis_;
    std::vector<double> normal_eigenvalues_;
    std::vector<double> pseudo_inverse_;  // 63 x 168
};

const DesignMatrix &design_matrix();

/// Flattens a dataset into DesignMatrix row order.
std::vector<double> readout_vector(const TomoDataset &data);

struct ReconstructionResult {
    DensityOperator rho_est;
    double residual_norm = 0;
    bool projected = false;
};

/// Least squares on the traceless coefficients with unit trace imposed. A raw
/// estimate with an eigenvalue below -project_tol has its negative eigenvalues
/// clipped to zero and is renormalized.
ReconstructionResult reconstruct(const TomoDataset &data, double project_tol = kStateMinEigTol);

WitnessReport witness_from_tomography(const TomoDataset &data);

/// JSON object {"shots": n|null, "seed": n|null, "rows": [...]} where each
/// row is {setting, spin, bra_index, ket_index, re, im}.
std::string dataset_to_json(const TomoDataset &data);

/// Accepts the object written by dataset_to_json or a bare array of rows.
TomoDataset dataset_from_json(std::string_view text);

}  // namespace pwl
