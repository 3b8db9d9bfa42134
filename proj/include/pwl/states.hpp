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
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pwl/linalg.hpp"

namespace pwl {

inline constexpr std::size_t kNumQubits = 3;
inline constexpr std::size_t kStateDim = 8;

inline constexpr double kStateHermitianTol = 1e-12;
inline constexpr double kStateTraceTol = 1e-12;
inline constexpr double kStateMinEigTol = 1e-10;
inline constexpr double kPureNormTol = 1e-12;

/// How the 8-dimensional space is split into tensor factors. Qubits 2 and 3
/// together form the ququart in the 2x4 view.
enum class Partition { kThreeQubits, kQubitQuquart };

std::vector<std::size_t> factor_dims(Partition p);

/// Mixing parameter of the bound entangled family, restricted to [0, 1].
class BParam {
   public:
    explicit BParam(double b);
    double value() const {
        return b_;
    }

   private:
    double b_;
};

class PureState {
   public:
    /// Throws InvalidArgument unless the vector has length 8 and unit norm.
    static PureState from_amplitudes(std::vector<Complex> amplitudes);
    static PureState basis(std::size_t index);
    /// Parses a 3-character bit string such as "011".
    static PureState basis(std::string_view bits);

    std::span<const Complex> amplitudes() const {
        return amps_;
    }
    ComplexMatrix projector() const;

   private:
    explicit PureState(std::vector<Complex> a) : amps_(std::move(a)) {
    }
    std::vector<Complex> amps_;
};

/// <a|b>
Complex overlap(const PureState &a, const PureState &b);

/// 8x8 Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
   public:
    /// Validates Hermiticity, trace and positivity. Eigenvalues in
    /// [-min_eig_tol, 0) are accepted as numerical noise.
    static DensityOperator from_matrix(ComplexMatrix m, Partition p = Partition::kThreeQubits,
                                       double herm_tol = kStateHermitianTol,
                                       double trace_tol = kStateTraceTol,
                                       double min_eig_tol = kStateMinEigTol);
    static DensityOperator from_pure(const PureState &psi, Partition p = Partition::kThreeQubits);
    static DensityOperator maximally_mixed(Partition p = Partition::kThreeQubits);

    const ComplexMatrix &matrix() const {
        return m_;
    }
    Partition partition() const {
        return partition_;
    }
    std::vector<std::size_t> dims() const {
        return factor_dims(partition_);
    }
    DensityOperator with_partition(Partition p) const {
        DensityOperator d = *this;
        d.partition_ = p;
        return d;
    }

   private:
    DensityOperator(ComplexMatrix m, Partition p) : m_(std::move(m)), partition_(p) {
    }
    ComplexMatrix m_;
    Partition partition_ = Partition::kThreeQubits;
};

/// Convex weights of the five pure components, in the order
/// psi_1, psi_2, psi_3, |011>, phi_b.
struct MixtureWeights {
    double w_psi1 = 0;
    double w_psi2 = 0;
    double w_psi3 = 0;
    double w_011 = 0;
    double w_phi = 0;

    std::array<double, 5> as_array() const {
        return {w_psi1, w_psi2, w_psi3, w_011, w_phi};
    }
};

/// (|000>+|101>)/sqrt2, (|001>+|110>)/sqrt2, (|010>+|111>)/sqrt2 for k = 1, 2, 3.
PureState psi_k(int k);

/// |1> (x) (sqrt(1+b)|00> + sqrt(1-b)|11>)/sqrt2
PureState phi_b(BParam b);

MixtureWeights mixture_weights(BParam b);

/// The five pure components in MixtureWeights order.
std::array<PureState, 5> mixture_components(BParam b);

/// Sum of the weighted component projectors.
DensityOperator sigma_b_mixture(BParam b);

/// The closed-form 8x8 matrix of the family, entry by entry.
DensityOperator sigma_b_matrix(BParam b);

/// Pseudo-pure state: deviation `pure_part` on top of the maximally mixed
/// background with polarization epsilon in (0, 1].
struct PseudoPureState {
    double epsilon;
    DensityOperator pure_part;

    DensityOperator assemble() const;
};

/// (1 - epsilon)/8 * I + epsilon * pure
DensityOperator pps(double epsilon, const DensityOperator &pure);

/// Eigenvalues below this fraction of the largest one are treated as exact
/// zeros when taking square roots inside fidelity().
inline constexpr double kFidelitySpectralFloor = 1e-14;

/// Uhlmann fidelity [Tr sqrt(sqrt(rho_th) rho_ex sqrt(rho_th))]^2.
double fidelity(const DensityOperator &rho_th, const DensityOperator &rho_ex);

/// |<a|b>|^2, insensitive to global phase.
double pure_fidelity(const PureState &a, const PureState &b);

}  // namespace pwl
