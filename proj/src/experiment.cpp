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

#include "pwl/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "pwl/errors.hpp"

namespace pwl {

namespace {

using nlohmann::ordered_json;

// Stream tags for derive_seed so the random sources of one run stay independent.
constexpr std::uint64_t kPrepStream = 1;
constexpr std::uint64_t kMapJitterStream = 2;
constexpr std::uint64_t kMapShotStream = 3;
constexpr std::uint64_t kTomoStream = 4;

double rounded(double x) {
    return std::strtod(format_number(x).c_str(), nullptr);
}

ordered_json json_number(double x) {
    return ordered_json(rounded(x));
}

ordered_json witness_json(const WitnessReport &w) {
    ordered_json four = ordered_json::array();
    for (double v : w.four_values) {
        four.push_back(json_number(v));
    }
    return {{"b1", json_number(w.b1)},          {"b2", json_number(w.b2)},
            {"b3", json_number(w.b3)},          {"four_values", four},
            {"max_value", json_number(w.max_value)}, {"max_index", w.max_index},
            {"violated", w.violated}};
}

std::string bool_text(bool x) {
    return x ? "true" : "false";
}

}  // namespace

std::string format_number(double x) {
    if (x == 0.0) {
        x = 0.0;  // drop the sign of negative zero
    }
    return fmt::format("{:.6g}", x);
}

OutputFormat parse_format(std::string_view s) {
    if (s == "csv") {
        return OutputFormat::kCsv;
    }
    if (s == "json") {
        return OutputFormat::kJson;
    }
    throw InvalidArgument(fmt::format("unknown output format '{}' (expected csv or json)", s));
}

void RunConfig::validate() const {
    if (b_values.empty()) {
        throw InvalidArgument("at least one b value is required");
    }
    for (double b : b_values) {
        BParam{b};
    }
    if (shots && *shots < 1) {
        throw InvalidArgument(fmt::format("shots must be positive, got {}", *shots));
    }
    if (noise) {
        noise->validate();
    }
    if (is_stochastic() && repetitions < 2) {
        throw InvalidArgument("noisy runs need at least 2 repetitions to estimate a spread");
    }
    if (!(sigma_k >= 0.0)) {
        throw InvalidArgument("sigma multiplier must be non-negative");
    }
}

SingleRun run_once(BParam b, const std::optional<NoiseSpec> &noise, std::optional<std::int64_t> shots,
                   std::uint64_t seed) {
    std::optional<NoiseSpec> prep_noise = noise;
    if (prep_noise) {
        prep_noise->seed = derive_seed(seed, kPrepStream);
    }
    const DensityOperator rho = temporal_average(b, prep_noise);

    std::array<double, 3> direct{};
    for (int i = 1; i <= 3; ++i) {
        Circuit mapping = mapping_circuit(i);
        if (noise) {
            std::mt19937_64 rng(derive_seed(seed, kMapJitterStream, static_cast<std::uint64_t>(i)));
            mapping = jitter_circuit(expand_to_native(mapping), noise->angle_jitter_sigma, rng);
        }
        double value = z_magnetization(apply(mapping, rho), 3);
        if (shots) {
            std::mt19937_64 rng(derive_seed(seed, kMapShotStream, static_cast<std::uint64_t>(i)));
            std::normal_distribution<double> readout_noise(0.0, 1.0 / std::sqrt(static_cast<double>(*shots)));
            value += readout_noise(rng);
        }
        direct[static_cast<std::size_t>(i - 1)] = value;
    }

    const auto data = acquire(rho, shots, derive_seed(seed, kTomoStream));
    const auto rec = reconstruct(data);

    SingleRun run{};
    run.fidelity = fidelity(sigma_b_matrix(b), rho);
    run.ineq_direct = witness_from_expectations(direct[0], direct[1], direct[2]).max_value;
    run.ineq_tomo = witness(rec.rho_est).max_value;
    run.ppt_min_eig = ppt_check(rho.with_partition(Partition::kQubitQuquart), 0).min_eigenvalue;
    return run;
}

ResultRow evaluate_row(double b_value, const RunConfig &config, std::size_t row_index) {
    const BParam b(b_value);
    ResultRow row;
    row.b = b_value;
    row.ineq_theory = max_violation_analytic(b);

    if (!config.is_stochastic()) {
        const auto run = run_once(b, std::nullopt, std::nullopt, config.seed);
        row.fidelity = run.fidelity;
        row.ineq_direct = run.ineq_direct;
        row.ineq_tomo = run.ineq_tomo;
        row.ppt_min_eig = run.ppt_min_eig;
        row.sigma_est = 0.0;
        row.violated = run.ineq_direct > 1.0 + kVerdictTol;
        return row;
    }

    const int reps = config.repetitions;
    std::vector<double> direct(static_cast<std::size_t>(reps));
    double fid = 0, tomo = 0, ppt = 0, mean_direct = 0;
    for (int r = 0; r < reps; ++r) {
        const auto run = run_once(b, config.noise, config.shots,
                                  derive_seed(config.seed, row_index, static_cast<std::uint64_t>(r)));
        fid += run.fidelity;
        tomo += run.ineq_tomo;
        ppt += run.ppt_min_eig;
        mean_direct += run.ineq_direct;
        direct[static_cast<std::size_t>(r)] = run.ineq_direct;
    }
    mean_direct /= reps;
    double var = 0;
    for (double x : direct) {
        var += (x - mean_direct) * (x - mean_direct);
    }
    row.fidelity = fid / reps;
    row.ineq_direct = mean_direct;
    row.ineq_tomo = tomo / reps;
    row.ppt_min_eig = ppt / reps;
    row.sigma_est = std::sqrt(var / (reps - 1));
    row.violated = mean_direct - 1.0 > std::max(config.sigma_k * row.sigma_est, kVerdictTol);
    return row;
}

std::vector<ResultRow> cmd_table(const RunConfig &config) {
    config.validate();
    std::vector<ResultRow> rows;
    rows.reserve(config.b_values.size());
    for (std::size_t k = 0; k < config.b_values.size(); ++k) {
        rows.push_back(evaluate_row(config.b_values[k], config, k));
    }
    return rows;
}

std::vector<ResultRow> cmd_scan(double b_min, double b_max, int steps) {
    if (!(b_min >= 0.0 && b_min < b_max && b_max <= 1.0)) {
        throw InvalidArgument(fmt::format("scan range [{}, {}] must satisfy 0 <= b_min < b_max <= 1", b_min, b_max));
    }
    if (steps < 2) {
        throw InvalidArgument(fmt::format("scan needs at least 2 steps, got {}", steps));
    }
    RunConfig config;
    config.b_values.clear();
    for (int k = 0; k < steps; ++k) {
        const double b = k + 1 == steps ? b_max : b_min + (b_max - b_min) * k / (steps - 1);
        config.b_values.push_back(b);
    }
    return cmd_table(config);
}

std::optional<double> find_crossing(const std::vector<ResultRow> &rows) {
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        const double v0 = rows[k].ineq_theory - 1.0;
        const double v1 = rows[k + 1].ineq_theory - 1.0;
        if ((v0 > 0) != (v1 > 0)) {
            return rows[k].b - v0 * (rows[k + 1].b - rows[k].b) / (v1 - v0);
        }
    }
    return std::nullopt;
}

TomoReport cmd_tomo(double b_value, std::optional<std::int64_t> shots, std::uint64_t seed,
                    const std::optional<NoiseSpec> &noise, TomoDataset *dataset_out) {
    const BParam b(b_value);
    std::optional<NoiseSpec> prep_noise = noise;
    if (prep_noise) {
        prep_noise->seed = derive_seed(seed, kPrepStream);
    }
    const DensityOperator rho = temporal_average(b, prep_noise);
    TomoDataset data = acquire(rho, shots, seed);
    TomoReport report = cmd_tomo(data, b_value);
    report.shots = shots;
    if (dataset_out) {
        *dataset_out = std::move(data);
    }
    return report;
}

TomoReport cmd_tomo(const TomoDataset &data, std::optional<double> b) {
    const auto rec = reconstruct(data);
    TomoReport report;
    report.b = b;
    report.seed = data.seed;
    if (!data.records.empty()) {
        report.shots = data.records.front().shots;
    }
    if (b) {
        report.fidelity = fidelity(sigma_b_matrix(BParam(*b)), rec.rho_est);
    }
    report.residual_norm = rec.residual_norm;
    report.projected = rec.projected;
    report.ppt_min_eig = ppt_check(rec.rho_est.with_partition(Partition::kQubitQuquart), 0).min_eigenvalue;
    report.witness = witness(rec.rho_est);
    return report;
}

PrepareReport cmd_prepare(double b_value, const std::optional<NoiseSpec> &noise) {
    const BParam b(b_value);
    PrepareReport report;
    report.b = b_value;
    report.component_names = {"psi1", "psi2", "psi3", "011", "phi_b"};

    const auto targets = mixture_components(b);
    const auto prepared = prepare_components(b, noise);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        report.component_fidelities[k] = fidelity(DensityOperator::from_pure(targets[k]), prepared[k]);
    }
    report.assembled_fidelity = fidelity(sigma_b_matrix(b), temporal_average(b, noise));

    const auto circuits = preparation_circuits(b);
    for (std::size_t k = 0; k < circuits.size(); ++k) {
        report.circuits_text += fmt::format("# prepare {}\n{}", report.component_names[k], to_text(circuits[k]));
    }
    for (int i = 1; i <= 3; ++i) {
        report.circuits_text += fmt::format("# map B{}\n{}", i, to_text(mapping_circuit(i)));
    }
    return report;
}

PptReport cmd_ppt(double b_value, std::string_view cut) {
    const auto sigma = sigma_b_matrix(BParam(b_value));
    if (cut == "2|4") {
        return ppt_check(sigma.with_partition(Partition::kQubitQuquart), 0);
    }
    if (cut == "1|23") {
        return ppt_check(sigma, 0);
    }
    if (cut == "2|13") {
        return ppt_check(sigma, 1);
    }
    if (cut == "3|12") {
        return ppt_check(sigma, 2);
    }
    throw InvalidArgument(fmt::format("unknown cut '{}' (expected 2|4, 1|23, 2|13 or 3|12)", cut));
}

std::string rows_to_csv(const std::vector<ResultRow> &rows) {
    std::string out = "b,fidelity,ineq_theory,ineq_direct,ineq_tomo,ppt_min_eig,violated,sigma_est\n";
    for (const auto &r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", format_number(r.b), format_number(r.fidelity),
                           format_number(r.ineq_theory), format_number(r.ineq_direct), format_number(r.ineq_tomo),
                           format_number(r.ppt_min_eig), bool_text(r.violated), format_number(r.sigma_est));
    }
    return out;
}

std::string rows_to_json(const std::vector<ResultRow> &rows) {
    ordered_json arr = ordered_json::array();
    for (const auto &r : rows) {
        arr.push_back({{"b", json_number(r.b)},
                       {"fidelity", json_number(r.fidelity)},
                       {"ineq_theory", json_number(r.ineq_theory)},
                       {"ineq_direct", json_number(r.ineq_direct)},
                       {"ineq_tomo", json_number(r.ineq_tomo)},
                       {"ppt_min_eig", json_number(r.ppt_min_eig)},
                       {"violated", r.violated},
                       {"sigma_est", json_number(r.sigma_est)}});
    }
    return arr.dump(2) + "\n";
}

std::string format_rows(const std::vector<ResultRow> &rows, OutputFormat f) {
    return f == OutputFormat::kCsv ? rows_to_csv(rows) : rows_to_json(rows);
}

std::string format_report(const TomoReport &r, OutputFormat f) {
    auto opt_number = [](const std::optional<double> &x) { return x ? format_number(*x) : std::string(); };
    if (f == OutputFormat::kCsv) {
        return fmt::format(
            "b,shots,seed,fidelity,residual_norm,projected,ppt_min_eig,b1,b2,b3,max_value,violated\n"
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            opt_number(r.b), r.shots ? std::to_string(*r.shots) : "", r.seed ? std::to_string(*r.seed) : "",
            opt_number(r.fidelity), format_number(r.residual_norm), bool_text(r.projected),
            format_number(r.ppt_min_eig), format_number(r.witness.b1), format_number(r.witness.b2),
            format_number(r.witness.b3), format_number(r.witness.max_value), bool_text(r.witness.violated));
    }
    ordered_json doc;
    doc["b"] = r.b ? json_number(*r.b) : ordered_json(nullptr);
    doc["shots"] = r.shots ? ordered_json(*r.shots) : ordered_json(nullptr);
    doc["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
    doc["fidelity"] = r.fidelity ? json_number(*r.fidelity) : ordered_json(nullptr);
    doc["residual_norm"] = json_number(r.residual_norm);
    doc["projected"] = r.projected;
    doc["ppt_min_eig"] = json_number(r.ppt_min_eig);
    doc["witness"] = witness_json(r.witness);
    return doc.dump(2) + "\n";
}

std::string format_report(const PrepareReport &r, OutputFormat f) {
    if (f == OutputFormat::kCsv) {
        std::string out = "component,fidelity\n";
        for (std::size_t k = 0; k < r.component_names.size(); ++k) {
            out += fmt::format("{},{}\n", r.component_names[k], format_number(r.component_fidelities[k]));
        }
        out += fmt::format("sigma_b,{}\n", format_number(r.assembled_fidelity));
        return out;
    }
    ordered_json comps = ordered_json::object();
    for (std::size_t k = 0; k < r.component_names.size(); ++k) {
        comps[r.component_names[k]] = json_number(r.component_fidelities[k]);
    }
    ordered_json doc = {{"b", json_number(r.b)},
                        {"component_fidelities", comps},
                        {"assembled_fidelity", json_number(r.assembled_fidelity)}};
    return doc.dump(2) + "\n";
}

std::string format_report(const PptReport &r, double b, OutputFormat f) {
    if (f == OutputFormat::kCsv) {
        return fmt::format("b,cut,min_eigenvalue,is_ppt\n{},{},{},{}\n", format_number(b), r.cut_label(),
                           format_number(r.min_eigenvalue), bool_text(r.is_ppt));
    }
    ordered_json doc = {{"b", json_number(b)},
                        {"cut", r.cut_label()},
                        {"min_eigenvalue", json_number(r.min_eigenvalue)},
                        {"is_ppt", r.is_ppt}};
    return doc.dump(2) + "\n";
}

}  // namespace pwl
