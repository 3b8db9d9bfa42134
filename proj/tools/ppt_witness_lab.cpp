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

// Command-line front end. Exit codes: 0 success, 1 I/O failure, 2 invalid
// arguments, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pwl/errors.hpp"
#include "pwl/experiment.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct NoiseFlags {
    bool noisy = false;
    std::optional<double> p;
    std::optional<double> jitter;

    void attach(CLI::App *cmd) {
        cmd->add_flag("--noisy", noisy, "Enable the default noise profile (p=0.05, jitter=0.02 rad)");
        cmd->add_option("--noise-p", p, "Depolarizing probability per prepared state (implies --noisy)");
        cmd->add_option("--jitter", jitter, "Std. dev. of pulse-angle error in radians (implies --noisy)");
    }

    std::optional<pwl::NoiseSpec> spec(std::uint64_t seed) const {
        if (!noisy && !p && !jitter) {
            return std::nullopt;
        }
        auto n = pwl::NoiseSpec::default_profile(seed);
        if (p) {
            n.depolarizing_p = *p;
        }
        if (jitter) {
            n.angle_jitter_sigma = *jitter;
        }
        n.validate();
        return n;
    }
};

void write_output(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw IoError(fmt::format("cannot write '{}'", path));
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot read '{}'", path));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bound entanglement witness lab: build the qubit-ququart PPT entangled family, "
                 "test the three-observable inequality, emulate preparation and tomography."};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = 0;
    auto common = [&](CLI::App *cmd) {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "Output file (default: stdout)");
        cmd->add_option("--seed", seed, "Base random seed");
    };

    // table
    auto *table = app.add_subcommand("table", "Inequality values for a list of b (defaults to the five table rows)");
    std::vector<double> table_b;
    std::optional<std::int64_t> table_shots;
    int reps = pwl::kDefaultRepetitions;
    double sigma_k = pwl::kDefaultSigmaK;
    NoiseFlags table_noise;
    table->add_option("--b", table_b, "b values");
    table->add_option("--shots", table_shots, "Readout shots (adds Gaussian noise 1/sqrt(shots))");
    table->add_option("--reps", reps, "Monte Carlo repetitions for noisy runs");
    table->add_option("--sigma-k", sigma_k, "Violation requires value - 1 > k * sigma_est");
    table_noise.attach(table);
    common(table);

    // scan
    auto *scan = app.add_subcommand("scan", "Noiseless sweep of b with PPT and violation verdicts");
    double b_min = 0.0, b_max = 1.0;
    int steps = 101;
    scan->add_option("--b-min", b_min, "Lower end of the sweep");
    scan->add_option("--b-max", b_max, "Upper end of the sweep");
    scan->add_option("--steps", steps, "Number of grid points");
    common(scan);

    // tomo
    auto *tomo = app.add_subcommand("tomo", "Seven-setting tomography of sigma_b or of a recorded dataset");
    std::optional<double> tomo_b;
    std::optional<std::int64_t> tomo_shots;
    std::string tomo_input, tomo_save;
    NoiseFlags tomo_noise;
    tomo->add_option("--b", tomo_b, "b of the state to simulate (or to compare against with --input)");
    tomo->add_option("--shots", tomo_shots, "Readout shots");
    tomo->add_option("--input", tomo_input, "Reconstruct from a dataset JSON file instead of simulating");
    tomo->add_option("--save-dataset", tomo_save, "Write the simulated dataset as JSON");
    tomo_noise.attach(tomo);
    common(tomo);

    // prepare
    auto *prepare = app.add_subcommand("prepare", "Preparation-circuit fidelities and temporal averaging");
    double prepare_b = 0.04;
    std::string dump_path;
    NoiseFlags prepare_noise;
    prepare->add_option("--b", prepare_b, "b value");
    prepare->add_option("--dump-circuit", dump_path, "Write preparation and mapping circuits as text");
    prepare_noise.attach(prepare);
    common(prepare);

    // ppt
    auto *ppt = app.add_subcommand("ppt", "Partial-transpose test of sigma_b across one cut");
    double ppt_b = 0.5;
    std::string cut = "2|4";
    ppt->add_option("--b", ppt_b, "b value");
    ppt->add_option("--cut", cut, "Cut: 2|4, 1|23, 2|13 or 3|12");
    common(ppt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        const auto fmt_choice = pwl::parse_format(format);
        if (table->parsed()) {
            pwl::RunConfig config;
            if (!table_b.empty()) {
                config.b_values = table_b;
            }
            config.shots = table_shots;
            config.noise = table_noise.spec(seed);
            config.seed = seed;
            config.repetitions = reps;
            config.sigma_k = sigma_k;
            write_output(out_path, pwl::format_rows(pwl::cmd_table(config), fmt_choice));
        } else if (scan->parsed()) {
            const auto rows = pwl::cmd_scan(b_min, b_max, steps);
            write_output(out_path, pwl::format_rows(rows, fmt_choice));
            if (const auto crossing = pwl::find_crossing(rows)) {
                std::cerr << "violation boundary (linear interpolation): b = " << pwl::format_number(*crossing)
                          << "\n";
            }
        } else if (tomo->parsed()) {
            pwl::TomoReport report;
            if (!tomo_input.empty()) {
                report = pwl::cmd_tomo(pwl::dataset_from_json(read_file(tomo_input)), tomo_b);
            } else {
                pwl::TomoDataset data;
                report = pwl::cmd_tomo(tomo_b.value_or(0.04), tomo_shots, seed, tomo_noise.spec(seed), &data);
                if (!tomo_save.empty()) {
                    write_output(tomo_save, pwl::dataset_to_json(data));
                }
            }
            write_output(out_path, pwl::format_report(report, fmt_choice));
        } else if (prepare->parsed()) {
            const auto report = pwl::cmd_prepare(prepare_b, prepare_noise.spec(seed));
            if (!dump_path.empty()) {
                write_output(dump_path, report.circuits_text);
            }
            write_output(out_path, pwl::format_report(report, fmt_choice));
        } else if (ppt->parsed()) {
            write_output(out_path, pwl::format_report(pwl::cmd_ppt(ppt_b, cut), ppt_b, fmt_choice));
        }
    } catch (const pwl::InvalidArgument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const pwl::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
