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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pwl/errors.hpp"

namespace pwl {

std::vector<std::size_t> factor_dims(Partition p) {
    switch (p) {
        case Partition::kThreeQubits:
            return {2, 2, 2};
        case Partition::kQubitQuquart:
            return {2, 4};
    }
    return {};
}

BParam::BParam(double b) : b_(b) {
    if (!(b >= 0.0 && b <= 1.0)) {
        throw InvalidArgument(fmt::format("b = {} is outside [0, 1]", b));
    }
}

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.size() != kStateDim) {
        throw InvalidArgument(fmt::format("pure state needs {} amplitudes, got {}", kStateDim, amplitudes.size()));
    }
    double norm2 = 0;
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidArgument("pure state has a non-finite amplitude");
        }
        norm2 += std::norm(a);
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kPureNormTol) {
        throw InvalidArgument(fmt::format("pure state norm {} is not 1", std::sqrt(norm2)));
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t index) {
    if (index >= kStateDim) {
        throw InvalidArgument(fmt::format("basis index {} out of range", index));
    }
    std::vector<Complex> a(kStateDim);
    a[index] = 1.0;
    return PureState(std::move(a));
}

PureState PureState::basis(std::string_view bits) {
    if (bits.size() != kNumQubits) {
        throw InvalidArgument(fmt::format("basis label '{}' must have {} bits", bits, kNumQubits));
    }
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw InvalidArgument(fmt::format("basis label '{}' must contain only 0 and 1", bits));
        }
        index = 2 * index + static_cast<std::size_t>(ch - '0');
    }
    return basis(index);
}

ComplexMatrix PureState::projector() const {
    return ComplexMatrix::outer(amps_, amps_);
}

Complex overlap(const PureState &a, const PureState &b) {
    Complex s{};
    for (std::size_t k = 0; k < kStateDim; ++k) {
        s += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
    }
    return s;
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, Partition p, double herm_tol, double trace_tol,
                                             double min_eig_tol) {
    if (m.dim() != kStateDim) {
        throw InvalidArgument(fmt::format("density operator must be {0}x{0}, got dim {1}", kStateDim, m.dim()));
    }
    if (!m.all_finite()) {
        throw InvalidArgument("density operator has a non-finite entry");
    }
    if (!m.is_hermitian(herm_tol)) {
        throw InvalidArgument("density operator is not Hermitian");
    }
    const Complex tr = trace(m);
    if (std::abs(tr - Complex(1.0)) > trace_tol) {
        throw InvalidArgument(fmt::format("density operator trace {}{:+}i is not 1", tr.real(), tr.imag()));
    }
    const double lam = min_eigenvalue(m);
    if (lam < -min_eig_tol) {
        throw InvalidArgument(fmt::format("density operator has negative eigenvalue {}", lam));
    }
    return DensityOperator(std::move(m), p);
}

DensityOperator DensityOperator::from_pure(const PureState &psi, Partition p) {
    return DensityOperator(psi.projector(), p);
}

DensityOperator DensityOperator::maximally_mixed(Partition p) {
    return DensityOperator(ComplexMatrix::identity(kStateDim) * Complex(1.0 / kStateDim), p);
}

PureState psi_k(int k) {
    static constexpr std::size_t kSupport[3][2] = {{0b000, 0b101}, {0b001, 0b110}, {0b010, 0b111}};
    if (k < 1 || k > 3) {
        throw InvalidArgument(fmt::format("psi_k: k = {} is not in 1..3", k));
    }
    std::vector<Complex> a(kStateDim);
    a[kSupport[k - 1][0]] = M_SQRT1_2;
    a[kSupport[k - 1][1]] = M_SQRT1_2;
    return PureState::from_amplitudes(std::move(a));
}

PureState phi_b(BParam b) {
    std::vector<Complex> a(kStateDim);
    a[0b100] = std::sqrt((1.0 + b.value()) / 2.0);
    a[0b111] = std::sqrt((1.0 - b.value()) / 2.0);
    return PureState::from_amplitudes(std::move(a));
}

MixtureWeights mixture_weights(BParam b) {
    const double x = b.value();
    const double norm = 7.0 * x + 1.0;
    MixtureWeights w;
    w.w_psi1 = 2.0 * x / norm;
    w.w_psi2 = w.w_psi1;
    w.w_psi3 = w.w_psi1;
    w.w_011 = x / norm;
    w.w_phi = 1.0 / norm;
    return w;
}

std::array<PureState, 5> mixture_components(BParam b) {
    return {psi_k(1), psi_k(2), psi_k(3), PureState::basis("011"), phi_b(b)};
}

DensityOperator sigma_b_mixture(BParam b) {
    const auto weights = mixture_weights(b).as_array();
    const auto components = mixture_components(b);
    ComplexMatrix m(kStateDim);
    for (std::size_t k = 0; k < components.size(); ++k) {
        m += components[k].projector() * Complex(weights[k]);
    }
    return DensityOperator::from_matrix(std::move(m));
}

DensityOperator sigma_b_matrix(BParam b) {
    const double x = b.value();
    ComplexMatrix m(kStateDim);
    // b-blocks: (0,5), (1,6), (2,7) coherences plus diagonal 0..3, 5, 6.
    for (std::size_t k = 0; k < 3; ++k) {
        m(k, k) = x;
        m(k, k + 5) = x;
        m(k + 5, k) = x;
        m(k + 5, k + 5) = x;
    }
    m(3, 3) = x;
    m(4, 4) = (1.0 + x) / 2.0;
    m(7, 7) = (1.0 + x) / 2.0;
    m(4, 7) = std::sqrt(1.0 - x * x) / 2.0;
    m(7, 4) = m(4, 7);
    m *= Complex(1.0 / (1.0 + 7.0 * x));
    return DensityOperator::from_matrix(std::move(m));
}

DensityOperator PseudoPureState::assemble() const {
    return pps(epsilon, pure_part);
}

DensityOperator pps(double epsilon, const DensityOperator &pure) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw InvalidArgument(fmt::format("pseudo-pure epsilon = {} is outside (0, 1]", epsilon));
    }
    ComplexMatrix m = ComplexMatrix::identity(kStateDim) * Complex((1.0 - epsilon) / kStateDim) +
                      pure.matrix() * Complex(epsilon);
    return DensityOperator::from_matrix(std::move(m), pure.partition());
}

namespace {

double sum_of_roots(const HermEigResult &eig, double floor) {
    double s = 0;
    for (double lam : eig.eigenvalues) {
        if (lam > floor) {
            s += std::sqrt(lam);
        }
    }
    return s;
}

}  // namespace

double fidelity(const DensityOperator &rho_th, const DensityOperator &rho_ex) {
    const auto eig_th = herm_eig(rho_th.matrix());
    const double floor_th = kFidelitySpectralFloor * std::max(1.0, eig_th.eigenvalues.back());
    std::vector<double> roots(eig_th.eigenvalues.size());
    std::transform(eig_th.eigenvalues.begin(), eig_th.eigenvalues.end(), roots.begin(),
                   [&](double lam) { return lam > floor_th ? std::sqrt(lam) : 0.0; });
    const ComplexMatrix sqrt_th = spectral_map(eig_th, roots);

    ComplexMatrix inner = sqrt_th * rho_ex.matrix() * sqrt_th;
    inner = (inner + dagger(inner)) * Complex(0.5);
    const auto eig_inner = herm_eig(inner);
    const double floor_inner = kFidelitySpectralFloor * std::max(1.0, eig_inner.eigenvalues.back());
    const double s = sum_of_roots(eig_inner, floor_inner);
    return s * s;
}

double pure_fidelity(const PureState &a, const PureState &b) {
    return std::norm(overlap(a, b));
}

}  // namespace pwl
