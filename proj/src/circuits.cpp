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

#include "pwl/circuits.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "pwl/errors.hpp"

namespace pwl {

namespace {

constexpr double kPi = M_PI;

void check_qubit(int q) {
    if (q < 1 || q > static_cast<int>(kNumQubits)) {
        throw InvalidArgument(fmt::format("qubit index {} is not in 1..{}", q, kNumQubits));
    }
}

void check_pair(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw InvalidArgument(fmt::format("two-qubit gate needs distinct qubits, got {} twice", a));
    }
}

void check_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw InvalidArgument(fmt::format("gate {} must be finite", what));
    }
}

// Bit of qubit q (1-based, qubit 1 most significant) in a basis index.
int bit_of(std::size_t index, int q) {
    return static_cast<int>((index >> (kNumQubits - static_cast<std::size_t>(q))) & 1U);
}

ComplexMatrix embed_single(const ComplexMatrix &u, int q) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int k = 1; k <= static_cast<int>(kNumQubits); ++k) {
        out = tensor(out, k == q ? u : pauli::I());
    }
    return out;
}

ComplexMatrix pulse(double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex minus_i(0, -1);
    return {{c, minus_i * s * std::polar(1.0, -phi)}, {minus_i * s * std::polar(1.0, phi), c}};
}

void validate(const Gate &g) {
    switch (g.kind) {
        case GateKind::kRotation:
            check_qubit(g.q1);
            check_finite(g.theta, "angle");
            check_finite(g.phi, "phase");
            break;
        case GateKind::kZRotation:
            check_qubit(g.q1);
            check_finite(g.theta, "angle");
            break;
        case GateKind::kCnot:
        case GateKind::kCphase:
            check_pair(g.q1, g.q2);
            break;
        case GateKind::kJEvolution:
            check_pair(g.q1, g.q2);
            check_finite(g.tau, "duration");
            break;
    }
}

}  // namespace

Gate Gate::rotation(int q, double theta, double phi) {
    Gate g{GateKind::kRotation, q, 0, theta, phi, 0};
    validate(g);
    return g;
}

Gate Gate::z_rotation(int q, double theta) {
    Gate g{GateKind::kZRotation, q, 0, theta, 0, 0};
    validate(g);
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g{GateKind::kCnot, control, target, 0, 0, 0};
    validate(g);
    return g;
}

Gate Gate::cphase(int a, int b) {
    Gate g{GateKind::kCphase, a, b, 0, 0, 0};
    validate(g);
    return g;
}

Gate Gate::j_evolution(int a, int b, double tau) {
    Gate g{GateKind::kJEvolution, a, b, 0, 0, tau};
    validate(g);
    return g;
}

ComplexMatrix gate_unitary(const Gate &g) {
    validate(g);
    switch (g.kind) {
        case GateKind::kRotation:
            return embed_single(pulse(g.theta, g.phi), g.q1);
        case GateKind::kZRotation:
            return embed_single({{std::polar(1.0, -g.theta / 2), 0}, {0, std::polar(1.0, g.theta / 2)}}, g.q1);
        case GateKind::kCnot: {
            ComplexMatrix u(kStateDim);
            const std::size_t flip = std::size_t{1} << (kNumQubits - static_cast<std::size_t>(g.q2));
            for (std::size_t k = 0; k < kStateDim; ++k) {
                u(bit_of(k, g.q1) ? k ^ flip : k, k) = 1.0;
            }
            return u;
        }
        case GateKind::kCphase: {
            ComplexMatrix u(kStateDim);
            for (std::size_t k = 0; k < kStateDim; ++k) {
                u(k, k) = (bit_of(k, g.q1) && bit_of(k, g.q2)) ? -1.0 : 1.0;
            }
            return u;
        }
        case GateKind::kJEvolution: {
            // Iz Iz = +-1/4, so the phase is -+ 2 pi tau / 4.
            ComplexMatrix u(kStateDim);
            for (std::size_t k = 0; k < kStateDim; ++k) {
                const double zz = bit_of(k, g.q1) == bit_of(k, g.q2) ? 0.25 : -0.25;
                u(k, k) = std::polar(1.0, -2.0 * kPi * g.tau * zz);
            }
            return u;
        }
    }
    throw InvalidArgument("gate_unitary: unknown gate kind");
}

ComplexMatrix circuit_unitary(const Circuit &c) {
    ComplexMatrix u = ComplexMatrix::identity(kStateDim);
    for (const auto &g : c.gates) {
        u = gate_unitary(g) * u;
    }
    return u;
}

PureState apply(const Circuit &c, const PureState &psi) {
    const ComplexMatrix u = circuit_unitary(c);
    std::vector<Complex> out(kStateDim);
    for (std::size_t r = 0; r < kStateDim; ++r) {
        for (std::size_t k = 0; k < kStateDim; ++k) {
            out[r] += u(r, k) * psi.amplitudes()[k];
        }
    }
    return PureState::from_amplitudes(std::move(out));
}

DensityOperator apply(const Circuit &c, const DensityOperator &rho) {
    return DensityOperator::from_matrix(conjugate(circuit_unitary(c), rho.matrix()), rho.partition());
}

double phi_b_angle(BParam b) {
    return std::acos(std::sqrt(1.0 + b.value()) / std::sqrt(2.0));
}

Circuit prepare_phi_b(BParam b) {
    Circuit c;
    c.then(Gate::rotation(2, 2.0 * phi_b_angle(b), kPi / 2))
        .then(Gate::cnot(2, 3))
        .then(Gate::rotation(1, kPi, 0.0));
    return c;
}

Circuit prepare_psi_k(int k) {
    Circuit c;
    c.then(Gate::rotation(1, kPi / 2, kPi / 2));
    switch (k) {
        case 1:
            c.then(Gate::cnot(1, 3));
            break;
        case 2:
            c.then(Gate::cnot(1, 2)).then(Gate::rotation(3, kPi, 0.0)).then(Gate::cnot(1, 3));
            break;
        case 3:
            c.then(Gate::cnot(1, 3)).then(Gate::rotation(2, kPi, 0.0));
            break;
        default:
            throw InvalidArgument(fmt::format("prepare_psi_k: k = {} is not in 1..3", k));
    }
    return c;
}

Circuit prepare_basis(std::string_view bits) {
    PureState::basis(bits);  // validates the label
    Circuit c;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') {
            c.then(Gate::rotation(static_cast<int>(q) + 1, kPi, 0.0));
        }
    }
    return c;
}

std::array<Circuit, 5> preparation_circuits(BParam b) {
    return {prepare_psi_k(1), prepare_psi_k(2), prepare_psi_k(3), prepare_basis("011"), prepare_phi_b(b)};
}

Circuit mapping_circuit(int i) {
    Circuit c;
    switch (i) {
        case 1:
            // y pulses take X to -Z on qubits 2 and 3; the signs cancel in pairs.
            c.then(Gate::rotation(2, kPi / 2, kPi / 2)).then(Gate::rotation(3, kPi / 2, kPi / 2));
            c.then(Gate::cnot(2, 3));
            break;
        case 2:
            c.then(Gate::rotation(2, kPi / 2, 0.0)).then(Gate::rotation(3, kPi / 2, 0.0));
            c.then(Gate::cnot(2, 3));
            break;
        case 3:
            c.then(Gate::cnot(1, 3)).then(Gate::cnot(2, 3));
            break;
        default:
            throw InvalidArgument(fmt::format("mapping_circuit: observable index {} is not in 1..3", i));
    }
    return c;
}

double z_magnetization(const DensityOperator &rho, int qubit) {
    check_qubit(qubit);
    double m = 0;
    for (std::size_t k = 0; k < kStateDim; ++k) {
        m += (bit_of(k, qubit) ? -1.0 : 1.0) * rho.matrix()(k, k).real();
    }
    return m;
}

double mapped_expectation(const DensityOperator &rho, int i) {
    return z_magnetization(apply(mapping_circuit(i), rho), 3);
}

Circuit expand_to_native(const Circuit &c) {
    // CZ(a,b) = e^{-i pi/4} Rz_a(-pi/2) Rz_b(-pi/2) U_J(1/2)
    // CNOT(c,t) = Ry_t(pi/2) CZ(c,t) Ry_t(-pi/2)
    auto cz = [](Circuit &out, int a, int b) {
        out.then(Gate::j_evolution(a, b, 0.5)).then(Gate::z_rotation(a, -kPi / 2)).then(Gate::z_rotation(b, -kPi / 2));
    };
    Circuit out;
    for (const auto &g : c.gates) {
        switch (g.kind) {
            case GateKind::kCnot:
                out.then(Gate::rotation(g.q2, kPi / 2, 3 * kPi / 2));
                cz(out, g.q1, g.q2);
                out.then(Gate::rotation(g.q2, kPi / 2, kPi / 2));
                break;
            case GateKind::kCphase:
                cz(out, g.q1, g.q2);
                break;
            default:
                out.then(g);
        }
    }
    return out;
}

void NoiseSpec::validate() const {
    if (!(depolarizing_p >= 0.0 && depolarizing_p <= 1.0)) {
        throw InvalidArgument(fmt::format("depolarizing probability {} is outside [0, 1]", depolarizing_p));
    }
    if (!(angle_jitter_sigma >= 0.0) || !std::isfinite(angle_jitter_sigma)) {
        throw InvalidArgument(fmt::format("angle jitter {} must be finite and non-negative", angle_jitter_sigma));
    }
}

DensityOperator apply_noise(const DensityOperator &rho, const NoiseSpec &noise) {
    noise.validate();
    const double p = noise.depolarizing_p;
    ComplexMatrix m = rho.matrix() * Complex(1.0 - p) + ComplexMatrix::identity(kStateDim) * Complex(p / kStateDim);
    return DensityOperator::from_matrix(std::move(m), rho.partition());
}

Circuit jitter_circuit(const Circuit &c, double sigma, std::mt19937_64 &rng) {
    if (sigma == 0.0) {
        return c;
    }
    std::normal_distribution<double> err(0.0, sigma);
    Circuit out = c;
    for (auto &g : out.gates) {
        if (g.kind == GateKind::kRotation || g.kind == GateKind::kZRotation) {
            g.theta += err(rng);
        }
    }
    return out;
}

Circuit jitter_circuit(const Circuit &c, const NoiseSpec &noise) {
    noise.validate();
    std::mt19937_64 rng(noise.seed);
    return jitter_circuit(c, noise.angle_jitter_sigma, rng);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a simple combination of the inputs.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

std::array<DensityOperator, 5> prepare_components(BParam b, const std::optional<NoiseSpec> &noise) {
    if (noise) {
        noise->validate();
    }
    const auto circuits = preparation_circuits(b);
    const auto ground = DensityOperator::from_pure(PureState::basis(0));
    auto prepare = [&](std::size_t k) {
        if (!noise) {
            return apply(circuits[k], ground);
        }
        std::mt19937_64 rng(derive_seed(noise->seed, k));
        const Circuit jittered = jitter_circuit(expand_to_native(circuits[k]), noise->angle_jitter_sigma, rng);
        return apply_noise(apply(jittered, ground), *noise);
    };
    return {prepare(0), prepare(1), prepare(2), prepare(3), prepare(4)};
}

DensityOperator temporal_average(BParam b, const std::optional<NoiseSpec> &noise) {
    const auto weights = mixture_weights(b).as_array();
    const auto components = prepare_components(b, noise);
    ComplexMatrix m(kStateDim);
    for (std::size_t k = 0; k < components.size(); ++k) {
        m += components[k].matrix() * Complex(weights[k]);
    }
    return DensityOperator::from_matrix(std::move(m));
}

std::string to_text(const Circuit &c) {
    std::string out;
    for (const auto &g : c.gates) {
        switch (g.kind) {
            case GateKind::kRotation:
                out += fmt::format("ROT q={} theta={} phi={}\n", g.q1, g.theta, g.phi);
                break;
            case GateKind::kZRotation:
                out += fmt::format("ZROT q={} theta={}\n", g.q1, g.theta);
                break;
            case GateKind::kCnot:
                out += fmt::format("CNOT c={} t={}\n", g.q1, g.q2);
                break;
            case GateKind::kCphase:
                out += fmt::format("CPHASE q={},{}\n", g.q1, g.q2);
                break;
            case GateKind::kJEvolution:
                out += fmt::format("JEV q={},{} tau={}\n", g.q1, g.q2, g.tau);
                break;
        }
    }
    return out;
}

namespace {

double parse_number(std::string_view s, std::size_t line_no) {
    double x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument(fmt::format("circuit line {}: bad number '{}'", line_no, s));
    }
    return x;
}

int parse_int(std::string_view s, std::size_t line_no) {
    int x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument(fmt::format("circuit line {}: bad integer '{}'", line_no, s));
    }
    return x;
}

std::pair<int, int> parse_pair(std::string_view s, std::size_t line_no) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) {
        throw InvalidArgument(fmt::format("circuit line {}: expected 'a,b', got '{}'", line_no, s));
    }
    return {parse_int(s.substr(0, comma), line_no), parse_int(s.substr(comma + 1), line_no)};
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line);
        std::string op;
        if (!(words >> op) || op.front() == '#') {
            continue;
        }
        std::map<std::string, std::string, std::less<>> kv;
        std::string word;
        while (words >> word) {
            const auto eq = word.find('=');
            if (eq == std::string::npos) {
                throw InvalidArgument(fmt::format("circuit line {}: expected key=value, got '{}'", line_no, word));
            }
            kv[word.substr(0, eq)] = word.substr(eq + 1);
        }
        auto field = [&](const char *key) -> std::string_view {
            const auto it = kv.find(key);
            if (it == kv.end()) {
                throw InvalidArgument(fmt::format("circuit line {}: {} is missing '{}'", line_no, op, key));
            }
            return it->second;
        };
        if (op == "ROT") {
            c.then(Gate::rotation(parse_int(field("q"), line_no), parse_number(field("theta"), line_no),
                                  parse_number(field("phi"), line_no)));
        } else if (op == "ZROT") {
            c.then(Gate::z_rotation(parse_int(field("q"), line_no), parse_number(field("theta"), line_no)));
        } else if (op == "CNOT") {
            c.then(Gate::cnot(parse_int(field("c"), line_no), parse_int(field("t"), line_no)));
        } else if (op == "CPHASE") {
            const auto [a, b] = parse_pair(field("q"), line_no);
            c.then(Gate::cphase(a, b));
        } else if (op == "JEV") {
            const auto [a, b] = parse_pair(field("q"), line_no);
            c.then(Gate::j_evolution(a, b, parse_number(field("tau"), line_no)));
        } else {
            throw InvalidArgument(fmt::format("circuit line {}: unknown gate '{}'", line_no, op));
        }
    }
    return c;
}

}  // namespace pwl
