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
#include <string>
#include <string_view>
#include <vector>

#include "pwl/circuits.hpp"
#include "pwl/entanglement.hpp"
#include "pwl/states.hpp"
#include "pwl/tomography.hpp"

namespace pwl {

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_format(std::string_view s);

inline constexpr std::array<double, 5> kTableBValues = {0.04, 0.08, 0.12, 0.16, 0.20};
inline constexpr int kDefaultRepetitions = 30;
inline constexpr double kDefaultSigmaK = 2.0;

struct RunConfig {
    std::vector<double> b_values{kTableBValues.begin(), kTableBValues.end()};
    std::optional<std::int64_t> shots;
    /// Absent means a noiseless run.
    std::optional<NoiseSpec> noise;
    std::uint64_t seed = 0;
    /// Monte Carlo repetitions per b when noise or shots are active.
    int repetitions = kDefaultRepetitions;
    /// Sampled verdict: violated when value - 1 > sigma_k * sigma_est.
    double sigma_k = kDefaultSigmaK;

    void validate() const;
    bool is_stochastic() const {
        return noise.has_value() || shots.has_value();
    }
};

struct ResultRow {
    double b = 0;
    double fidelity = 0;
    double ineq_theory = 0;
    double ineq_direct = 0;
    double ineq_tomo = 0;
    double ppt_min_eig = 0;
    bool violated = false;
    double sigma_est = 0;
};

/// One pass of the emulated experiment for a single b.
struct SingleRun {
    double fidelity;
    double ineq_direct;
    double ineq_tomo;
    double ppt_min_eig;
};

/// Prepares the state by temporal averaging, reads <B_i> through the mapping
/// circuits and the qubit-3 magnetization, and runs seven-setting tomography.
/// Noise, jitter and shot noise are driven by `seed`.
SingleRun run_once(BParam b, const std::optional<NoiseSpec> &noise, std::optional<std::int64_t> shots,
                   std::uint64_t seed);

ResultRow evaluate_row(double b, const RunConfig &config, std::size_t row_index);

std::vector<ResultRow> cmd_table(const RunConfig &config);

/// Noiseless evaluation on `steps` evenly spaced b values in [b_min, b_max].
std::vector<ResultRow> cmd_scan(double b_min, double b_max, int steps);

/// b at which ineq_theory crosses 1, by linear interpolation between the first
/// bracketing pair of rows. Empty if the rows never cross.
std::optional<double> find_crossing(const std::vector<ResultRow> &rows);

struct TomoReport {
    std::optional<double> b;
    std::optional<std::int64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<double> fidelity;
    double residual_norm = 0;
    bool projected = false;
    double ppt_min_eig = 0;
    WitnessReport witness;
};

/// Simulates and reconstructs sigma_b. The prepared state carries `noise`
/// when given.
TomoReport cmd_tomo(double b, std::optional<std::int64_t> shots, std::uint64_t seed,
                    const std::optional<NoiseSpec> &noise = std::nullopt, TomoDataset *dataset_out = nullptr);

/// Reconstructs from a recorded dataset; fidelity is filled when `b` is given.
TomoReport cmd_tomo(const TomoDataset &data, std::optional<double> b);

struct PrepareReport {
    double b = 0;
    std::array<std::string, 5> component_names;
    std::array<double, 5> component_fidelities{};
    double assembled_fidelity = 0;
    std::string circuits_text;
};

PrepareReport cmd_prepare(double b, const std::optional<NoiseSpec> &noise);

/// Cut labels: "2|4" (qubit vs ququart), "1|23", "2|13", "3|12".
PptReport cmd_ppt(double b, std::string_view cut);

std::string rows_to_csv(const std::vector<ResultRow> &rows);
std::string rows_to_json(const std::vector<ResultRow> &rows);
std::string format_rows(const std::vector<ResultRow> &rows, OutputFormat f);

std::string format_report(const TomoReport &r, OutputFormat f);
std::string format_report(const PrepareReport &r, OutputFormat f);
std::string format_report(const PptReport &r, double b, OutputFormat f);

/// Six significant digits, the precision of every number the CLI prints.
std::string format_number(double x);

}  // namespace pwl
