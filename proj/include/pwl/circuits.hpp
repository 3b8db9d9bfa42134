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

#include "pwl/linalg.hpp"
#include "pwl/states.hpp"

namespace pwl {

enum class GateKind { kRotation, kZRotation, kCnot, kCphase, kJEvolution };

/// One gate on the 3-qubit register. Qubits are numbered 1..3.
///
/// kRotation:   exp(-i theta (cos(phi) X + sin(phi) Y) / 2) on `q1`. A barred
///              (negative) pulse phase is phi + pi.
/// kZRotation:  exp(-i theta Z / 2) on `q1`.
/// kCnot:       control `q1`, target `q2`.
/// kCphase:     diag(1, 1, 1, -1) on (`q1`, `q2`).
/// kJEvolution: exp(-i 2 pi tau Iz Iz) on (`q1`, `q2`) with Iz = Z/2, where
///              tau = J t is dimensionless; tau = 1/2 is the 1/(2J) delay.
struct Gate {
    GateKind kind = GateKind::kRotation;
    int q1 = 1;
    int q2 = 0;
    double theta = 0;
    double phi = 0;
    double tau = 0;

    static Gate rotation(int q, double theta, double phi);
    static Gate z_rotation(int q, double theta);
    static Gate cnot(int control, int target);
    static Gate cphase(int a, int b);
    static Gate j_evolution(int a, int b, double tau);

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// Gates in time order: gates[0] acts first.
struct Circuit {
    std::vector<Gate> gates;

    Circuit &then(const Gate &g) {
        gates.push_back(g);
        return *this;
    }
    friend Circuit operator+(Circuit a, const Circuit &b) {
        a.gates.insert(a.gates.end(), b.gates.begin(), b.gates.end());
        return a;
    }
    friend bool operator==(const Circuit &, const Circuit &) = default;
};

ComplexMatrix gate_unitary(const Gate &g);
ComplexMatrix circuit_unitary(const Circuit &c);

PureState apply(const Circuit &c, const PureState &psi);
DensityOperator apply(const Circuit &c, const DensityOperator &rho);

/// Rotation angle theta = arccos(sqrt(1+b)/sqrt2) that sets the amplitude
/// split of phi_b. The qubit-2 pulse that realizes it has flip angle 2 theta.
double phi_b_angle(BParam b);

/// |000> -> phi_b (up to global phase): flip angle 2 theta on qubit 2 about y,
/// CNOT 2->3, pi pulse on qubit 1.
Circuit prepare_phi_b(BParam b);

/// |000> -> psi_k (up to global phase).
Circuit prepare_psi_k(int k);

/// |000> -> |bits> with pi pulses.
Circuit prepare_basis(std::string_view bits);

/// The five preparation circuits in MixtureWeights order.
std::array<Circuit, 5> preparation_circuits(BParam b);

/// Circuit V_i with V_i^dagger (I (x) I (x) Z) V_i = B_i, so that <B_i> on a
/// state equals the qubit-3 z magnetization after applying V_i.
Circuit mapping_circuit(int i);

/// Tr(rho Z_q), the normalized z magnetization of qubit q.
double z_magnetization(const DensityOperator &rho, int qubit);

/// <B_i> read out as the qubit-3 magnetization of the mapped state.
double mapped_expectation(const DensityOperator &rho, int i);

/// Rewrites CNOT and CPHASE in terms of pulses, z rotations and J evolution.
/// The result equals the input up to a global phase.
Circuit expand_to_native(const Circuit &c);

struct NoiseSpec {
    double depolarizing_p = 0.0;
    double angle_jitter_sigma = 0.0;
    std::uint64_t seed = 0;

    /// Emulation profile used by the CLI when noise is requested without
    /// explicit parameters.
    static NoiseSpec default_profile(std::uint64_t seed = 0) {
        return NoiseSpec{0.05, 0.02, seed};
    }
    void validate() const;
};

/// (1 - p) rho + p I/8
DensityOperator apply_noise(const DensityOperator &rho, const NoiseSpec &noise);

/// Adds N(0, sigma^2) to every pulse and z-rotation angle.
Circuit jitter_circuit(const Circuit &c, double sigma, std::mt19937_64 &rng);
Circuit jitter_circuit(const Circuit &c, const NoiseSpec &noise);

/// Each of the five components prepared from |000> by its circuit, optionally
/// jittered and depolarized. Component k uses an rng stream derived from
/// (noise.seed, k).
std::array<DensityOperator, 5> prepare_components(BParam b, const std::optional<NoiseSpec> &noise = std::nullopt);

/// Weighted sum of the five prepared components.
DensityOperator temporal_average(BParam b, const std::optional<NoiseSpec> &noise = std::nullopt);

/// Derives an independent 64-bit seed from a base seed and stream indices.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// One gate per line, e.g. "ROT q=2 theta=1.5707963267948966 phi=0".
std::string to_text(const Circuit &c);

/// Inverse of to_text. Blank lines and lines starting with '#' are skipped.
Circuit parse_circuit(std::string_view text);

}  // namespace pwl
