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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "pwl/errors.hpp"

namespace pwl {

namespace {

constexpr std::array<std::string_view, kNumSettings> kLabels = {"III", "XXX", "IIY", "XYX", "YII", "XXY", "IYY"};
constexpr std::size_t kTraceless = kStateParams - 1;

std::size_t setting_index(TomoSetting s) {
    return static_cast<std::size_t>(s);
}

std::size_t transition_slot(int spin, std::size_t bra, std::size_t ket) {
    const auto &ts = transitions();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k].spin == spin && ts[k].bra == bra && ts[k].ket == ket) {
            return k;
        }
    }
    throw InvalidArgument(
        fmt::format("({}, {}, {}) is not a single-quantum transition (spin, bra, ket)", spin, bra, ket));
}

}  // namespace

const std::array<TomoSetting, kNumSettings> &all_settings() {
    static const std::array<TomoSetting, kNumSettings> kAll = {TomoSetting::kIII, TomoSetting::kXXX, TomoSetting::kIIY,
                                                               TomoSetting::kXYX, TomoSetting::kYII, TomoSetting::kXXY,
                                                               TomoSetting::kIYY};
    return kAll;
}

std::string_view setting_label(TomoSetting s) {
    return kLabels[setting_index(s)];
}

TomoSetting parse_setting(std::string_view label) {
    for (std::size_t k = 0; k < kLabels.size(); ++k) {
        if (kLabels[k] == label) {
            return all_settings()[k];
        }
    }
    throw InvalidArgument(fmt::format("unknown tomography setting '{}'", label));
}

ComplexMatrix setting_unitary(TomoSetting s) {
    ComplexMatrix u = ComplexMatrix::identity(1);
    for (char ch : setting_label(s)) {
        ComplexMatrix local = pauli::I();
        if (ch != 'I') {
            // pi/2 pulse: cos(pi/4) I - i sin(pi/4) (cos(phi) X + sin(phi) Y)
            const ComplexMatrix axis = ch == 'X' ? pauli::X() : pauli::Y();
            local = (pauli::I() - Complex(0, 1) * axis) * Complex(M_SQRT1_2);
        }
        u = tensor(u, local);
    }
    return u;
}

const std::array<Transition, kAmplitudesPerRecord> &transitions() {
    static const auto kTransitions = [] {
        std::array<Transition, kAmplitudesPerRecord> ts{};
        std::size_t k = 0;
        for (int spin = 1; spin <= static_cast<int>(kNumQubits); ++spin) {
            const std::size_t mask = std::size_t{1} << (kNumQubits - static_cast<std::size_t>(spin));
            for (std::size_t m = 0; m < kStateDim; ++m) {
                if ((m & mask) == 0) {
                    ts[k++] = Transition{spin, m, m | mask};
                }
            }
        }
        return ts;
    }();
    return kTransitions;
}

namespace {

std::array<Complex, kAmplitudesPerRecord> coherences(const ComplexMatrix &rotated) {
    std::array<Complex, kAmplitudesPerRecord> out{};
    const auto &ts = transitions();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        out[k] = rotated(ts[k].bra, ts[k].ket);
    }
    return out;
}

}  // namespace

ReadoutRecord simulate_readout(const DensityOperator &rho, TomoSetting s) {
    ReadoutRecord r;
    r.setting = s;
    r.amplitudes = coherences(conjugate(setting_unitary(s), rho.matrix()));
    return r;
}

ReadoutRecord simulate_readout(const DensityOperator &rho, TomoSetting s, std::int64_t shots, std::mt19937_64 &rng) {
    if (shots < 1) {
        throw InvalidArgument(fmt::format("shots must be positive, got {}", shots));
    }
    ReadoutRecord r = simulate_readout(rho, s);
    r.shots = shots;
    std::normal_distribution<double> noise(0.0, 1.0 / std::sqrt(static_cast<double>(shots)));
    for (auto &a : r.amplitudes) {
        const double re = noise(rng);
        const double im = noise(rng);
        a += Complex(re, im);
    }
    return r;
}

void TomoDataset::validate() const {
    std::array<int, kNumSettings> seen{};
    for (const auto &r : records) {
        ++seen[setting_index(r.setting)];
    }
    for (std::size_t k = 0; k < kNumSettings; ++k) {
        if (seen[k] != 1) {
            throw InvalidArgument(fmt::format("dataset has setting {} {} times, expected once", kLabels[k], seen[k]));
        }
    }
    for (const auto &r : records) {
        for (const auto &a : r.amplitudes) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw InvalidArgument("dataset has a non-finite amplitude");
            }
        }
    }
}

TomoDataset acquire(const DensityOperator &rho, std::optional<std::int64_t> shots, std::uint64_t seed) {
    TomoDataset data;
    if (!shots) {
        for (auto s : all_settings()) {
            data.records.push_back(simulate_readout(rho, s));
        }
        return data;
    }
    data.seed = seed;
    std::mt19937_64 rng(seed);
    for (auto s : all_settings()) {
        data.records.push_back(simulate_readout(rho, s, *shots, rng));
    }
    return data;
}

DesignMatrix::DesignMatrix() : a_(kReadoutReals * kStateParams) {
    const std::array<ComplexMatrix, 4> single = {pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};
    for (std::size_t code = 0; code < kStateParams; ++code) {
        paulis_.push_back(tensor({single[code / 16], single[(code / 4) % 4], single[code % 4]}));
    }
    for (std::size_t c = 0; c < kStateParams; ++c) {
        const auto column = apply(paulis_[c] * Complex(1.0 / kStateDim));
        for (std::size_t r = 0; r < kReadoutReals; ++r) {
            a_[r * kStateParams + c] = column[r];
        }
    }

    // Normal matrix of the traceless block, diagonalized once; its spectrum
    // certifies the rank and its inverse gives the least-squares solver.
    ComplexMatrix normal(kTraceless);
    for (std::size_t i = 0; i < kTraceless; ++i) {
        for (std::size_t j = 0; j < kTraceless; ++j) {
            double s = 0;
            for (std::size_t r = 0; r < kReadoutReals; ++r) {
                s += (*this)(r, i + 1) * (*this)(r, j + 1);
            }
            normal(i, j) = s;
        }
    }
    const auto eig = herm_eig(normal);
    normal_eigenvalues_ = eig.eigenvalues;
    if (traceless_rank() < kTraceless) {
        // Leave the solver empty; solve() reports the singularity.
        return;
    }
    std::vector<double> inv(eig.eigenvalues.size());
    std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), inv.begin(), [](double lam) { return 1.0 / lam; });
    const ComplexMatrix normal_inv = spectral_map(eig, inv);
    pseudo_inverse_.assign(kTraceless * kReadoutReals, 0.0);
    for (std::size_t i = 0; i < kTraceless; ++i) {
        for (std::size_t r = 0; r < kReadoutReals; ++r) {
            double s = 0;
            for (std::size_t j = 0; j < kTraceless; ++j) {
                s += normal_inv(i, j).real() * (*this)(r, j + 1);
            }
            pseudo_inverse_[i * kReadoutReals + r] = s;
        }
    }
}

const DesignMatrix &DesignMatrix::instance() {
    static const DesignMatrix kInstance;
    return kInstance;
}

const DesignMatrix &design_matrix() {
    return DesignMatrix::instance();
}

std::vector<double> DesignMatrix::apply(const ComplexMatrix &h) const {
    if (h.dim() != kStateDim) {
        throw InvalidArgument("DesignMatrix::apply: operator must be 8x8");
    }
    std::vector<double> y;
    y.reserve(kReadoutReals);
    for (auto s : all_settings()) {
        for (const auto &a : coherences(conjugate(setting_unitary(s), h))) {
            y.push_back(a.real());
            y.push_back(a.imag());
        }
    }
    return y;
}

std::size_t DesignMatrix::traceless_rank(double rel_tol) const {
    const double top = normal_eigenvalues_.back();
    return static_cast<std::size_t>(std::count_if(normal_eigenvalues_.begin(), normal_eigenvalues_.end(),
                                                  [&](double lam) { return lam > rel_tol * top; }));
}

std::vector<double> DesignMatrix::solve(const std::vector<double> &y) const {
    if (pseudo_inverse_.empty()) {
        throw NumericalError(
            fmt::format("tomography normal equations are singular (rank {} < {})", traceless_rank(), kTraceless));
    }
    if (y.size() != kReadoutReals) {
        throw InvalidArgument(fmt::format("readout vector must have {} entries, got {}", kReadoutReals, y.size()));
    }
    std::vector<double> c(kTraceless);
    for (std::size_t i = 0; i < kTraceless; ++i) {
        double s = 0;
        for (std::size_t r = 0; r < kReadoutReals; ++r) {
            s += pseudo_inverse_[i * kReadoutReals + r] * y[r];
        }
        c[i] = s;
    }
    return c;
}

std::vector<double> readout_vector(const TomoDataset &data) {
    data.validate();
    std::vector<double> y(kReadoutReals);
    for (const auto &rec : data.records) {
        std::size_t offset = setting_index(rec.setting) * 2 * kAmplitudesPerRecord;
        for (const auto &a : rec.amplitudes) {
            y[offset++] = a.real();
            y[offset++] = a.imag();
        }
    }
    return y;
}

ReconstructionResult reconstruct(const TomoDataset &data, double project_tol) {
    const auto &design = design_matrix();
    const auto y = readout_vector(data);
    const auto coeffs = design.solve(y);

    ComplexMatrix rho = ComplexMatrix::identity(kStateDim) * Complex(1.0 / kStateDim);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        rho += design.basis_operator(j + 1) * Complex(coeffs[j] / kStateDim);
    }
    rho = (rho + dagger(rho)) * Complex(0.5);
    if (!rho.all_finite()) {
        throw NumericalError("tomography estimate is not finite");
    }

    double residual = 0;
    for (std::size_t r = 0; r < kReadoutReals; ++r) {
        double fit = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            fit += design(r, j + 1) * coeffs[j];
        }
        residual += (fit - y[r]) * (fit - y[r]);
    }

    bool projected = false;
    auto eig = herm_eig(rho);
    if (eig.eigenvalues.front() < -project_tol) {
        projected = true;
        double total = 0;
        for (auto &lam : eig.eigenvalues) {
            lam = std::max(lam, 0.0);
            total += lam;
        }
        if (total <= 0) {
            throw NumericalError("tomography estimate has no positive spectrum to renormalize");
        }
        for (auto &lam : eig.eigenvalues) {
            lam /= total;
        }
        rho = spectral_map(eig, eig.eigenvalues);
        rho = (rho + dagger(rho)) * Complex(0.5);
    }
    return ReconstructionResult{DensityOperator::from_matrix(std::move(rho)), std::sqrt(residual), projected};
}

WitnessReport witness_from_tomography(const TomoDataset &data) {
    return witness(reconstruct(data).rho_est);
}

std::string dataset_to_json(const TomoDataset &data) {
    using nlohmann::ordered_json;
    ordered_json doc;
    const auto shots = data.records.empty() ? std::nullopt : data.records.front().shots;
    doc["shots"] = shots ? ordered_json(*shots) : ordered_json(nullptr);
    doc["seed"] = data.seed ? ordered_json(*data.seed) : ordered_json(nullptr);
    ordered_json rows = ordered_json::array();
    for (const auto &rec : data.records) {
        const auto &ts = transitions();
        for (std::size_t k = 0; k < ts.size(); ++k) {
            rows.push_back({{"setting", std::string(setting_label(rec.setting))},
                            {"spin", ts[k].spin},
                            {"bra_index", ts[k].bra},
                            {"ket_index", ts[k].ket},
                            {"re", rec.amplitudes[k].real()},
                            {"im", rec.amplitudes[k].imag()}});
        }
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

TomoDataset dataset_from_json(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw InvalidArgument(fmt::format("tomography dataset is not valid JSON: {}", e.what()));
    }

    TomoDataset data;
    std::optional<std::int64_t> shots;
    const json *rows = &doc;
    if (doc.is_object()) {
        if (!doc.contains("rows") || !doc["rows"].is_array()) {
            throw InvalidArgument("tomography dataset object needs a 'rows' array");
        }
        rows = &doc["rows"];
        if (doc.contains("shots") && !doc["shots"].is_null()) {
            shots = doc["shots"].get<std::int64_t>();
        }
        if (doc.contains("seed") && !doc["seed"].is_null()) {
            data.seed = doc["seed"].get<std::uint64_t>();
        }
    } else if (!doc.is_array()) {
        throw InvalidArgument("tomography dataset must be a JSON object or array");
    }

    std::array<std::optional<ReadoutRecord>, kNumSettings> by_setting;
    std::array<std::array<bool, kAmplitudesPerRecord>, kNumSettings> filled{};
    try {
        for (const auto &row : *rows) {
            const auto setting = parse_setting(row.at("setting").get<std::string>());
            const std::size_t slot = transition_slot(row.at("spin").get<int>(), row.at("bra_index").get<std::size_t>(),
                                                     row.at("ket_index").get<std::size_t>());
            const std::size_t si = setting_index(setting);
            if (filled[si][slot]) {
                throw InvalidArgument(fmt::format("duplicate row for setting {} transition {}", kLabels[si], slot));
            }
            filled[si][slot] = true;
            if (!by_setting[si]) {
                by_setting[si] = ReadoutRecord{setting, {}, shots};
            }
            by_setting[si]->amplitudes[slot] = Complex(row.at("re").get<double>(), row.at("im").get<double>());
        }
    } catch (const json::exception &e) {
        throw InvalidArgument(fmt::format("malformed tomography row: {}", e.what()));
    }
    for (std::size_t si = 0; si < kNumSettings; ++si) {
        for (std::size_t slot = 0; slot < kAmplitudesPerRecord; ++slot) {
            if (!filled[si][slot]) {
                throw InvalidArgument(fmt::format("setting {} is missing transition {}", kLabels[si], slot));
            }
        }
        data.records.push_back(*by_setting[si]);
    }
    data.validate();
    return data;
}

}  // namespace pwl
