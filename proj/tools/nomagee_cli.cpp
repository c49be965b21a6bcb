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

// nomagee: solve one instance, run a Monte-Carlo sweep, validate stored beams,
// or turn a sweep CSV into a gnuplot table.
//
// exit status: 0 ok, 2 infeasible (or constraint violated for validate), 1 error

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "nomagee/baselines.hpp"
#include "nomagee/experiments.hpp"
#include "nomagee/io.hpp"

using namespace nomagee;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

void print_report(std::ostream &out, const PerformanceReport &r, const SystemConfig &config) {
    const double bw = config.bandwidth_hz;
    out << "gee_bits_per_joule=" << format_number(r.gee * bw) << '\n'
        << "gee_mbits_per_joule=" << format_number(r.gee * bw / 1e6) << '\n'
        << "sum_rate_bits_per_hz=" << format_number(r.sum_rate) << '\n'
        << "p_tr_w=" << format_number(r.p_tr) << '\n'
        << "p_total_w=" << format_number(r.p_total) << '\n'
        << "sic_ok=" << r.sic_ok << '\n'
        << "min_rate_ok=" << r.min_rate_ok << '\n'
        << "budget_ok=" << r.budget_ok << '\n';
    for (std::size_t i = 0; i < r.effective_sinrs.size(); ++i)
        out << "user" << i + 1 << " sinr=" << format_number(r.effective_sinrs[i])
            << " rate=" << format_number(r.rates[i]) << '\n';
}

void print_trace(std::ostream &out, Algorithm algo, const Solution &s) {
    switch (algo) {
    case Algorithm::sca:
        out << "n,alpha,sqrt_alpha,p_tr,sum_rate\n";
        for (const auto &t : s.sca_trace)
            out << t.n << ',' << format_number(t.alpha) << ',' << format_number(t.sqrt_alpha) << ','
                << format_number(t.p_tr) << ',' << format_number(t.sum_rate) << '\n';
        break;
    case Algorithm::dinkelbach:
    case Algorithm::srm:
        out << "outer,inner,chi,nu,p_tr,f_gap\n";
        for (const auto &t : s.dinkelbach_trace)
            out << t.outer << ',' << t.inner << ',' << format_number(t.chi) << ',' << format_number(t.nu) << ','
                << format_number(t.p_tr) << ',' << format_number(t.f_gap) << '\n';
        break;
    case Algorithm::pmin:
        out << "n,p_tr\n";
        for (std::size_t n = 0; n < s.objective_trace.size(); ++n)
            out << n + 1 << ',' << format_number(s.objective_trace[n]) << '\n';
        break;
    case Algorithm::zf:
        out << "n\n";
        break;
    }
}

struct SolveArgs {
    std::string algo = "sca";
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> txsnr_db;
    bool trace = false;
    bool zf_equal_power = false;
    std::string dump_channels;
    std::string dump_beams;
};

int run_solve(const SolveArgs &a) {
    const Algorithm algo = parse_algorithm(a.algo);
    SystemConfig config = a.config.empty() ? table1_config() : load_config(a.config);
    if (a.seed)
        config.seed = *a.seed;
    if (a.txsnr_db)
        config.p_ava = txsnr_to_budget(*a.txsnr_db, config.noise_var);
    config.validate();
    const ChannelSet channels = generate_channels(config);

    const auto t0 = std::chrono::steady_clock::now();
    const Solution sol = run_design(algo, channels, config, {}, a.zf_equal_power);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!a.dump_channels.empty())
        save_channels(channels, a.dump_channels);
    if (!a.dump_beams.empty())
        save_beams(sol.beams, a.dump_beams);

    std::cout << "algorithm=" << to_string(algo) << '\n'
              << "status=" << to_string(sol.status) << '\n'
              << "iterations=" << sol.iterations_used << '\n'
              << "seed=" << config.seed << '\n'
              << "p_ava_w=" << format_number(config.p_ava) << '\n'
              << "wall_time_ms=" << format_number(ms) << '\n';
    print_report(std::cout, sol.report, config);
    if (a.trace) {
        std::cout << '\n';
        print_trace(std::cout, algo, sol);
    }
    if (sol.status == SolveStatus::infeasible)
        return kExitInfeasible;
    if (algo == Algorithm::pmin && sol.ok() && !sol.report.budget_ok)
        return kExitInfeasible;
    if (!sol.usable())
        return kExitError;
    return kExitOk;
}

int run_sweep_cmd(const std::string &spec_path, const std::string &out_path, int threads, bool serial,
                  bool no_time) {
    SweepSpec spec = load_sweep_spec(spec_path);
    if (no_time)
        spec.record_time = false;
    if (threads > 0)
        omp_set_num_threads(threads);
    const auto rows = serial ? run_sweep_serial(spec) : run_sweep(spec);
    emit_csv(rows, out_path);
    std::size_t failed = 0;
    for (const auto &r : rows)
        if (r.status == "error" || r.status == "numerical_failure")
            ++failed;
    std::cerr << rows.size() << " rows written to " << out_path;
    if (failed)
        std::cerr << " (" << failed << " failed)";
    std::cerr << '\n';
    return kExitOk;
}

int run_validate(const std::string &channels_path, const std::string &beams_path, const std::string &config_path,
                 bool single_user) {
    const ChannelSet channels = load_channels(channels_path);
    const BeamformerSet beams = load_beams(beams_path);
    SystemConfig config = config_path.empty() ? table1_config() : load_config(config_path);
    if (config.num_users != channels.num_users()) {
        config.resize_users(channels.num_users());
    }
    config.num_antennas = channels.num_antennas();
    const auto report =
        validate_solution(channels, beams, config, single_user ? Decoding::single_user : Decoding::sic);
    print_report(std::cout, report, config);
    const bool ok = single_user ? (report.min_rate_ok && report.budget_ok) : report.all_ok();
    std::cout << "valid=" << ok << '\n';
    return ok ? kExitOk : kExitInfeasible;
}

Metric parse_metric(const std::string &m) {
    if (m == "gee")
        return Metric::gee;
    if (m == "sum_rate")
        return Metric::sum_rate;
    if (m == "p_tr")
        return Metric::p_tr;
    if (m == "p_total")
        return Metric::p_total;
    if (m == "iterations")
        return Metric::iterations;
    throw std::invalid_argument("unknown metric '" + m + "'");
}

// Whitespace table for gnuplot: one block per algorithm, blocks separated by two blank lines,
// each headed by a row whose first column names the algorithm.
int run_summarize(const std::string &in_path, const std::string &out_path, const std::string &metric) {
    const auto rows = parse_csv_file(in_path);
    const auto summary = summarize(rows, parse_metric(metric));
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open " + out_path + " for writing");
    std::string current;
    for (const auto &s : [&] {
             auto v = summary;
             std::stable_sort(v.begin(), v.end(), [](const SummaryRow &a, const SummaryRow &b) {
                 return a.algorithm != b.algorithm ? a.algorithm < b.algorithm : a.axis < b.axis;
             });
             return v;
         }()) {
        if (s.algorithm != current) {
            if (!current.empty())
                out << "\n\n";
            out << "# " << metric << "\n" << s.algorithm << " count mean median stddev\n";
            current = s.algorithm;
        }
        out << format_number(s.axis) << ' ' << s.count << ' ' << format_number(s.mean) << ' '
            << format_number(s.median) << ' ' << format_number(s.stddev) << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Energy-efficient MISO-NOMA beamforming"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Design beams for one random channel draw");
    solve->add_option("--algo", solve_args.algo, "sca | dinkelbach | pmin | srm | zf")->required();
    solve->add_option("--config", solve_args.config, "key=value config file (Table-I defaults)");
    solve->add_option("--seed", solve_args.seed, "channel seed");
    solve->add_option("--txsnr-db", solve_args.txsnr_db, "budget as TX-SNR in dB (overrides p_ava)");
    solve->add_flag("--trace", solve_args.trace, "append the iteration trace as CSV");
    solve->add_flag("--zf-equal-power", solve_args.zf_equal_power, "equal power instead of water-filling");
    solve->add_option("--dump-channels", solve_args.dump_channels, "write the channel draw");
    solve->add_option("--dump-beams", solve_args.dump_beams, "write the designed beams");

    std::string spec_path, out_path;
    int threads = 0;
    bool serial = false, no_time = false;
    auto *sweep = app.add_subcommand("sweep", "Monte-Carlo sweep to CSV");
    sweep->add_option("--spec", spec_path, "sweep spec file")->required();
    sweep->add_option("--out", out_path, "CSV output")->required();
    sweep->add_option("--threads", threads, "OpenMP threads (default: runtime)");
    sweep->add_flag("--serial", serial, "run without OpenMP");
    sweep->add_flag("--no-time", no_time, "write wall_time_ms = 0 for byte-stable output");

    std::string channels_path, beams_path, config_path;
    bool single_user = false;
    auto *validate = app.add_subcommand("validate", "Check stored beams against a stored channel set");
    validate->add_option("--channels", channels_path)->required();
    validate->add_option("--beams", beams_path)->required();
    validate->add_option("--config", config_path, "noise, targets and power model (Table-I defaults)");
    validate->add_flag("--single-user", single_user, "decode without SIC (ZF-OMA beams)");

    std::string csv_in, table_out, metric = "gee";
    auto *summ = app.add_subcommand("summarize", "Per-(axis, algorithm) statistics as a gnuplot table");
    summ->add_option("--in", csv_in)->required();
    summ->add_option("--out", table_out)->required();
    summ->add_option("--metric", metric, "gee | sum_rate | p_tr | p_total | iterations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*solve)
            return run_solve(solve_args);
        if (*sweep)
            return run_sweep_cmd(spec_path, out_path, threads, serial, no_time);
        if (*validate)
            return run_validate(channels_path, beams_path, config_path, single_user);
        if (*summ)
            return run_summarize(csv_in, table_out, metric);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
