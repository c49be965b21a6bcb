// SPDX-License-Identifier: Apache-2.0
//
// nomagee: energy-efficient beamforming for downlink MISO-NOMA systems
// Copyright (C) 2026 The nomagee authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NOMAGEE_EXPERIMENTS_HPP
#define NOMAGEE_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nomagee/scenario.hpp"
#include "nomagee/solution.hpp"

namespace nomagee {

enum class SweepAxis { txsnr_db, p_loss_dbm, num_antennas, path_loss_exponent };
enum class Algorithm { sca, dinkelbach, pmin, srm, zf };

std::string to_string(SweepAxis axis);
std::string to_string(Algorithm algo);
// Accepts the to_string names; "kappa" is an alias for path_loss_exponent. Throws std::invalid_argument.
SweepAxis parse_axis(const std::string &name);
Algorithm parse_algorithm(const std::string &name);

struct SweepSpec {
    SystemConfig base = table1_config();
    SweepAxis axis = SweepAxis::txsnr_db;
    std::vector<double> values;
    std::vector<Algorithm> algorithms{Algorithm::sca};
    int trials = 50;
    std::uint64_t master_seed = 1;
    double txsnr_db = 10.0;    // budget whenever the axis is not txsnr_db
    bool record_time = true;   // false writes wall_time_ms = 0 so output bytes are reproducible
    bool zf_equal_power = false;

    // Throws std::invalid_argument: trials >= 1, values nonempty and strictly increasing, algorithms nonempty.
    void validate() const;
    // Base config with the axis value and the per-trial seed applied.
    SystemConfig config_for(double axis_value, int trial) const;
};

struct ResultRow {
    int trial = 0;
    double axis = 0.0;
    std::string algorithm;
    double gee_bits_per_joule = 0.0;
    double gee_mbits_per_joule = 0.0;
    double sum_rate_bits = 0.0;
    double p_tr_w = 0.0;
    double p_total_w = 0.0;
    int iterations = 0;
    std::string status;
    double wall_time_ms = 0.0;

    friend bool operator==(const ResultRow &, const ResultRow &) = default;
};

// Runs one design; exceptions propagate. P-Min returns status infeasible, with zero beams, when
// the single-user lower bound on its power already exceeds p_ava.
Solution run_design(Algorithm algo, const ChannelSet &channels, const SystemConfig &config,
                    const AlgorithmOptions &options = {}, bool zf_equal_power = false);

// Runs one design on one channel set. Exceptions become rows with status "error".
// Sum rate is in bits/s/Hz; both gee columns scale by the configured bandwidth.
ResultRow run_algorithm(Algorithm algo, const ChannelSet &channels, const SystemConfig &config, int trial,
                        double axis_value, const AlgorithmOptions &options = {}, bool record_time = true,
                        bool zf_equal_power = false, Solution *out = nullptr);

// One task per (axis value, trial), spread over OpenMP threads; every design in a task
// sees the same channels. Rows come back sorted by (axis, trial, algorithm order in the spec).
std::vector<ResultRow> run_sweep(const SweepSpec &spec, const AlgorithmOptions &options = {});
std::vector<ResultRow> run_sweep_serial(const SweepSpec &spec, const AlgorithmOptions &options = {});

void sort_rows(std::vector<ResultRow> &rows, const std::vector<Algorithm> &order = {});

extern const char *const kCsvHeader;
void emit_csv(const std::vector<ResultRow> &rows, std::ostream &out);
// Throws std::runtime_error when the file cannot be written.
void emit_csv(const std::vector<ResultRow> &rows, const std::string &path);
// Throws std::runtime_error on malformed input.
std::vector<ResultRow> parse_csv(std::istream &in);
std::vector<ResultRow> parse_csv_file(const std::string &path);

// RFC-4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(const std::string &s);
// %.9g, the precision used in every numeric CSV cell.
std::string format_number(double x);

enum class Metric { gee, sum_rate, p_tr, p_total, iterations };

struct SummaryRow {
    double axis = 0.0;
    std::string algorithm;
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0; // sample (n - 1) formula, 0 for a single row
};

// Per (axis, algorithm) statistics of `metric` over rows whose status is not "error".
// Throws std::invalid_argument on empty input.
std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows, Metric metric = Metric::gee);
// Metric::gee reads gee_mbits_per_joule.

// (axis, median) pairs of one algorithm, ordered by axis.
std::vector<std::pair<double, double>> median_curve(const std::vector<SummaryRow> &summary,
                                                    const std::string &algorithm);

// First axis value x_i whose next relative gain (y_{i+1} - y_i) / |y_i| is below `threshold`.
std::optional<double> find_knee(const std::vector<std::pair<double, double>> &curve, double threshold = 0.01);

double median(std::vector<double> v);

} // namespace nomagee

#endif
