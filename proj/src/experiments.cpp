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

#include "nomagee/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nomagee/baselines.hpp"
#include "nomagee/dinkelbach.hpp"
#include "nomagee/sca.hpp"

namespace nomagee {

namespace {

constexpr Algorithm kAllAlgorithms[] = {Algorithm::sca, Algorithm::dinkelbach, Algorithm::pmin, Algorithm::srm,
                                        Algorithm::zf};

double round_sig(double x) {
    if (!std::isfinite(x))
        return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::size_t algorithm_rank(const std::string &name, const std::vector<Algorithm> &order) {
    for (std::size_t i = 0; i < order.size(); ++i)
        if (to_string(order[i]) == name)
            return i;
    return order.size();
}

std::vector<std::vector<ResultRow>> run_tasks(const SweepSpec &spec, const AlgorithmOptions &options, bool parallel) {
    spec.validate();
    const auto n_values = static_cast<long>(spec.values.size());
    const long n_tasks = n_values * spec.trials;
    std::vector<std::vector<ResultRow>> out(static_cast<std::size_t>(n_tasks));
    auto task = [&](long t) {
        const double value = spec.values[static_cast<std::size_t>(t / spec.trials)];
        const int trial = static_cast<int>(t % spec.trials);
        auto &rows = out[static_cast<std::size_t>(t)];
        SystemConfig config;
        ChannelSet channels;
        try {
            config = spec.config_for(value, trial);
            channels = generate_channels(config);
        } catch (const std::exception &) {
            for (Algorithm a : spec.algorithms) {
                ResultRow row;
                row.trial = trial;
                row.axis = value;
                row.algorithm = to_string(a);
                row.status = "error";
                rows.push_back(row);
            }
            return;
        }
        for (Algorithm a : spec.algorithms)
            rows.push_back(run_algorithm(a, channels, config, trial, value, options, spec.record_time,
                                         spec.zf_equal_power));
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long t = 0; t < n_tasks; ++t)
            task(t);
    } else {
        for (long t = 0; t < n_tasks; ++t)
            task(t);
    }
    return out;
}

std::vector<ResultRow> flatten(std::vector<std::vector<ResultRow>> parts, const std::vector<Algorithm> &order) {
    std::vector<ResultRow> rows;
    for (auto &p : parts)
        for (auto &r : p)
            rows.push_back(std::move(r));
    sort_rows(rows, order);
    return rows;
}

std::vector<std::string> split_record(const std::string &line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

double to_double(const std::string &s, std::size_t line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size())
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

int to_int(const std::string &s, std::size_t line_no) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size())
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    return v;
}

double metric_of(const ResultRow &r, Metric m) {
    switch (m) {
    case Metric::gee:
        return r.gee_mbits_per_joule;
    case Metric::sum_rate:
        return r.sum_rate_bits;
    case Metric::p_tr:
        return r.p_tr_w;
    case Metric::p_total:
        return r.p_total_w;
    case Metric::iterations:
        return r.iterations;
    }
    return 0.0;
}

} // namespace

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::txsnr_db:
        return "txsnr_db";
    case SweepAxis::p_loss_dbm:
        return "p_loss_dbm";
    case SweepAxis::num_antennas:
        return "num_antennas";
    case SweepAxis::path_loss_exponent:
        return "path_loss_exponent";
    }
    return "?";
}

std::string to_string(Algorithm algo) {
    switch (algo) {
    case Algorithm::sca:
        return "sca";
    case Algorithm::dinkelbach:
        return "dinkelbach";
    case Algorithm::pmin:
        return "pmin";
    case Algorithm::srm:
        return "srm";
    case Algorithm::zf:
        return "zf";
    }
    return "?";
}

SweepAxis parse_axis(const std::string &name) {
    for (SweepAxis a : {SweepAxis::txsnr_db, SweepAxis::p_loss_dbm, SweepAxis::num_antennas,
                        SweepAxis::path_loss_exponent})
        if (to_string(a) == name)
            return a;
    if (name == "kappa")
        return SweepAxis::path_loss_exponent;
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

Algorithm parse_algorithm(const std::string &name) {
    for (Algorithm a : kAllAlgorithms)
        if (to_string(a) == name)
            return a;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void SweepSpec::validate() const {
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (values.empty())
        throw std::invalid_argument("sweep needs at least one axis value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep values must be strictly increasing");
    if (algorithms.empty())
        throw std::invalid_argument("sweep needs at least one algorithm");
    if (axis == SweepAxis::num_antennas)
        for (double v : values)
            if (v < 1.0 || v != std::floor(v))
                throw std::invalid_argument("num_antennas values must be positive integers");
}

SystemConfig SweepSpec::config_for(double axis_value, int trial) const {
    SystemConfig c = base;
    const double budget_db = axis == SweepAxis::txsnr_db ? axis_value : txsnr_db;
    switch (axis) {
    case SweepAxis::txsnr_db:
        break;
    case SweepAxis::p_loss_dbm:
        c.p_sta = dbm_to_watts(axis_value);
        c.p_dyn = 0.0;
        break;
    case SweepAxis::num_antennas:
        c.num_antennas = static_cast<int>(axis_value);
        break;
    case SweepAxis::path_loss_exponent:
        c.path_loss_exponent = axis_value;
        break;
    }
    c.p_ava = txsnr_to_budget(budget_db, c.noise_var);
    c.seed = trial_seed(master_seed, static_cast<std::uint64_t>(trial));
    return c;
}

Solution run_design(Algorithm algo, const ChannelSet &channels, const SystemConfig &config,
                    const AlgorithmOptions &options, bool zf_equal_power) {
    switch (algo) {
    case Algorithm::sca:
        return run_sca(channels, config, options);
    case Algorithm::dinkelbach:
        return run_dinkelbach(channels, config, options);
    case Algorithm::pmin: {
        const double bound = pmin_lower_bound(channels, config.min_sinr, config.noise_var);
        if (bound > config.p_ava) {
            Solution sol;
            sol.beams = BeamformerSet::zeros(channels.num_users(), channels.num_antennas());
            sol.status = SolveStatus::infeasible;
            sol.objective_trace.push_back(bound);
            sol.report = validate_solution(channels, sol.beams, config);
            return sol;
        }
        return solve_pmin(channels, config.min_sinr, config, options);
    }
    case Algorithm::srm:
        return solve_srm(channels, config, options);
    case Algorithm::zf:
        return solve_zf_oma(channels, config, zf_equal_power);
    }
    throw std::invalid_argument("unknown algorithm");
}

ResultRow run_algorithm(Algorithm algo, const ChannelSet &channels, const SystemConfig &config, int trial,
                        double axis_value, const AlgorithmOptions &options, bool record_time, bool zf_equal_power,
                        Solution *out) {
    ResultRow row;
    row.trial = trial;
    row.axis = axis_value;
    row.algorithm = to_string(algo);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Solution s = run_design(algo, channels, config, options, zf_equal_power);
        const auto t1 = std::chrono::steady_clock::now();
        row.gee_bits_per_joule = round_sig(s.report.gee * config.bandwidth_hz);
        row.gee_mbits_per_joule = round_sig(s.report.gee * config.bandwidth_hz / 1e6);
        row.sum_rate_bits = round_sig(s.report.sum_rate);
        row.p_tr_w = round_sig(s.report.p_tr);
        row.p_total_w = round_sig(s.report.p_total);
        row.iterations = s.iterations_used;
        row.status = to_string(s.status);
        if (record_time)
            row.wall_time_ms = round_sig(std::chrono::duration<double, std::milli>(t1 - t0).count());
        if (out)
            *out = std::move(s);
    } catch (const std::exception &) {
        row.status = "error";
    }
    return row;
}

std::vector<ResultRow> run_sweep(const SweepSpec &spec, const AlgorithmOptions &options) {
    return flatten(run_tasks(spec, options, true), spec.algorithms);
}

std::vector<ResultRow> run_sweep_serial(const SweepSpec &spec, const AlgorithmOptions &options) {
    return flatten(run_tasks(spec, options, false), spec.algorithms);
}

void sort_rows(std::vector<ResultRow> &rows, const std::vector<Algorithm> &order) {
    const std::vector<Algorithm> ord =
        order.empty() ? std::vector<Algorithm>(std::begin(kAllAlgorithms), std::end(kAllAlgorithms)) : order;
    std::stable_sort(rows.begin(), rows.end(), [&](const ResultRow &a, const ResultRow &b) {
        if (a.axis != b.axis)
            return a.axis < b.axis;
        if (a.trial != b.trial)
            return a.trial < b.trial;
        const auto ra = algorithm_rank(a.algorithm, ord);
        const auto rb = algorithm_rank(b.algorithm, ord);
        if (ra != rb)
            return ra < rb;
        return a.algorithm < b.algorithm;
    });
}

const char *const kCsvHeader = "trial,axis,algorithm,gee_bits_per_joule,gee_mbits_per_joule,sum_rate_bits,p_tr_w,"
                               "p_total_w,iterations,status,wall_time_ms";

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    q += '"';
    return q;
}

void emit_csv(const std::vector<ResultRow> &rows, std::ostream &out) {
    out << kCsvHeader << "\r\n";
    for (const auto &r : rows) {
        out << r.trial << ',' << format_number(r.axis) << ',' << csv_field(r.algorithm) << ','
            << format_number(r.gee_bits_per_joule) << ',' << format_number(r.gee_mbits_per_joule) << ','
            << format_number(r.sum_rate_bits) << ',' << format_number(r.p_tr_w) << ','
            << format_number(r.p_total_w) << ',' << r.iterations << ',' << csv_field(r.status) << ','
            << format_number(r.wall_time_ms) << "\r\n";
    }
}

void emit_csv(const std::vector<ResultRow> &rows, const std::string &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    emit_csv(rows, f);
    if (!f)
        throw std::runtime_error("write to " + path + " failed");
}

std::vector<ResultRow> parse_csv(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<ResultRow> rows;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (header) {
            if (line != kCsvHeader)
                throw std::runtime_error("csv: unexpected header");
            header = false;
            continue;
        }
        if (line.empty())
            continue;
        const auto f = split_record(line, line_no);
        if (f.size() != 11)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 11 fields");
        ResultRow r;
        r.trial = to_int(f[0], line_no);
        r.axis = to_double(f[1], line_no);
        r.algorithm = f[2];
        r.gee_bits_per_joule = to_double(f[3], line_no);
        r.gee_mbits_per_joule = to_double(f[4], line_no);
        r.sum_rate_bits = to_double(f[5], line_no);
        r.p_tr_w = to_double(f[6], line_no);
        r.p_total_w = to_double(f[7], line_no);
        r.iterations = to_int(f[8], line_no);
        r.status = f[9];
        r.wall_time_ms = to_double(f[10], line_no);
        rows.push_back(std::move(r));
    }
    if (header)
        throw std::runtime_error("csv: missing header");
    return rows;
}

std::vector<ResultRow> parse_csv_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    return parse_csv(f);
}

double median(std::vector<double> v) {
    if (v.empty())
        throw std::invalid_argument("median of an empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows, Metric metric) {
    if (rows.empty())
        throw std::invalid_argument("summarize: no rows");
    std::map<std::pair<double, std::string>, std::vector<double>> groups;
    for (const auto &r : rows)
        if (r.status != "error")
            groups[{r.axis, r.algorithm}].push_back(metric_of(r, metric));
    std::vector<SummaryRow> out;
    for (const auto &[key, v] : groups) {
        SummaryRow s;
        s.axis = key.first;
        s.algorithm = key.second;
        s.count = v.size();
        s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        s.median = median(v);
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v)
                ss += (x - s.mean) * (x - s.mean);
            s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
        out.push_back(s);
    }
    return out;
}

std::vector<std::pair<double, double>> median_curve(const std::vector<SummaryRow> &summary,
                                                    const std::string &algorithm) {
    std::vector<std::pair<double, double>> curve;
    for (const auto &s : summary)
        if (s.algorithm == algorithm)
            curve.emplace_back(s.axis, s.median);
    std::sort(curve.begin(), curve.end());
    return curve;
}

std::optional<double> find_knee(const std::vector<std::pair<double, double>> &curve, double threshold) {
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double y = curve[i].second;
        const double gain = (curve[i + 1].second - y) / std::max(std::abs(y), 1e-300);
        if (gain < threshold)
            return curve[i].first;
    }
    return std::nullopt;
}

} // namespace nomagee
