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

#include "nomagee/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nomagee {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

std::vector<KeyValue> read_pairs(std::istream &in) {
    std::vector<KeyValue> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("line " + std::to_string(n) + ": expected key=value");
        out.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), n});
    }
    return out;
}

[[noreturn]] void bad(const KeyValue &kv, const std::string &what) {
    throw std::runtime_error("line " + std::to_string(kv.line) + " (" + kv.key + "): " + what);
}

double as_double(const KeyValue &kv, const std::string &text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception &) {
        bad(kv, "not a number: '" + text + "'");
    }
    if (pos != text.size())
        bad(kv, "not a number: '" + text + "'");
    return v;
}

double as_double(const KeyValue &kv) { return as_double(kv, kv.value); }

long long as_integer(const KeyValue &kv) {
    const double v = as_double(kv);
    if (v != std::floor(v))
        bad(kv, "expected an integer");
    return static_cast<long long>(v);
}

std::uint64_t as_u64(const KeyValue &kv) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(kv.value, &pos);
    } catch (const std::exception &) {
        bad(kv, "expected an unsigned integer");
    }
    if (pos != kv.value.size() || kv.value.find('-') != std::string::npos)
        bad(kv, "expected an unsigned integer");
    return v;
}

bool as_bool(const KeyValue &kv) {
    if (kv.value == "1" || kv.value == "true" || kv.value == "yes")
        return true;
    if (kv.value == "0" || kv.value == "false" || kv.value == "no")
        return false;
    bad(kv, "expected true or false");
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep))
        parts.push_back(trim(cur));
    return parts;
}

std::vector<double> as_list(const KeyValue &kv) {
    std::vector<double> out;
    for (const auto &p : split(kv.value, ','))
        out.push_back(as_double(kv, p));
    if (out.empty())
        bad(kv, "empty list");
    return out;
}

std::vector<double> as_values(const KeyValue &kv) {
    if (kv.value.find(':') == std::string::npos)
        return as_list(kv);
    const auto parts = split(kv.value, ':');
    if (parts.size() != 3)
        bad(kv, "range must be start:step:stop");
    const double start = as_double(kv, parts[0]);
    const double step = as_double(kv, parts[1]);
    const double stop = as_double(kv, parts[2]);
    if (!(step > 0.0) || stop < start)
        bad(kv, "range needs step > 0 and stop >= start");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i)
        out.push_back(start + static_cast<double>(i) * step);
    return out;
}

// Applies one config key; false when the key is not a SystemConfig field.
bool apply_config_key(SystemConfig &c, const KeyValue &kv, std::vector<double> &distances,
                      std::vector<double> &min_sinr) {
    const auto &k = kv.key;
    if (k == "num_antennas")
        c.num_antennas = static_cast<int>(as_integer(kv));
    else if (k == "num_users")
        c.num_users = static_cast<int>(as_integer(kv));
    else if (k == "distances")
        distances = as_list(kv);
    else if (k == "path_loss_exponent")
        c.path_loss_exponent = as_double(kv);
    else if (k == "noise_var")
        c.noise_var = as_double(kv);
    else if (k == "bandwidth_hz")
        c.bandwidth_hz = as_double(kv);
    else if (k == "min_sinr")
        min_sinr = as_list(kv);
    else if (k == "amp_efficiency")
        c.amp_efficiency = as_double(kv);
    else if (k == "p_sta")
        c.p_sta = as_double(kv);
    else if (k == "p_dyn")
        c.p_dyn = as_double(kv);
    else if (k == "p_ava")
        c.p_ava = as_double(kv);
    else if (k == "sca_tolerance")
        c.sca_tolerance = as_double(kv);
    else if (k == "dinkelbach_tolerance")
        c.dinkelbach_tolerance = as_double(kv);
    else if (k == "max_iterations")
        c.max_iterations = static_cast<int>(as_integer(kv));
    else if (k == "seed")
        c.seed = as_u64(kv);
    else
        return false;
    return true;
}

void finish_config(SystemConfig &c, std::vector<double> distances, std::vector<double> min_sinr) {
    const auto k = static_cast<std::size_t>(c.num_users);
    auto fit = [k](std::vector<double> &dst, std::vector<double> src, const char *name) {
        if (src.empty()) {
            if (dst.size() != k)
                dst.resize(k, dst.empty() ? 0.0 : dst.back());
            return;
        }
        if (src.size() == 1)
            src.assign(k, src.front());
        if (src.size() != k)
            throw std::runtime_error(std::string(name) + " must list num_users values");
        dst = std::move(src);
    };
    fit(c.distances, std::move(distances), "distances");
    fit(c.min_sinr, std::move(min_sinr), "min_sinr");
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(std::string("invalid config: ") + e.what());
    }
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt17(v[i]);
    return s;
}

std::complex<double> parse_complex(const std::string &tok, std::size_t line) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("line " + std::to_string(line) + ": expected re,im but got '" + tok + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string a = tok.substr(0, comma), b = tok.substr(comma + 1);
        const double re = std::stod(a, &p1);
        const double im = std::stod(b, &p2);
        if (p1 == a.size() && p2 == b.size())
            return {re, im};
    } catch (const std::exception &) {
    }
    throw std::runtime_error("line " + std::to_string(line) + ": bad complex entry '" + tok + "'");
}

struct VectorRecord {
    long index = 0;
    double distance = 0.0;
    CVec v;
};

std::vector<VectorRecord> read_records(std::istream &in, bool with_distance) {
    std::vector<VectorRecord> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> toks;
        for (std::string t; ss >> t;)
            toks.push_back(t);
        if (toks.empty())
            continue;
        const std::size_t head = with_distance ? 2 : 1;
        if (toks.size() <= head)
            throw std::runtime_error("line " + std::to_string(n) + ": record has no entries");
        VectorRecord r;
        try {
            r.index = std::stol(toks[0]);
            if (with_distance)
                r.distance = std::stod(toks[1]);
        } catch (const std::exception &) {
            throw std::runtime_error("line " + std::to_string(n) + ": bad record header");
        }
        r.v.resize(static_cast<Eigen::Index>(toks.size() - head));
        for (std::size_t j = head; j < toks.size(); ++j)
            r.v(static_cast<Eigen::Index>(j - head)) = parse_complex(toks[j], n);
        if (!out.empty() && out.front().v.size() != r.v.size())
            throw std::runtime_error("line " + std::to_string(n) + ": records differ in length");
        out.push_back(std::move(r));
    }
    if (out.empty())
        throw std::runtime_error("no records");
    return out;
}

void write_vector(std::ostream &out, const CVec &v) {
    for (Eigen::Index j = 0; j < v.size(); ++j)
        out << ' ' << fmt17(v(j).real()) << ',' << fmt17(v(j).imag());
}

template <class F> auto with_file(const std::string &path, F f) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    try {
        return f(in);
    } catch (const std::runtime_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

template <class F> void to_file(const std::string &path, F f) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    f(out);
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

} // namespace

SystemConfig parse_config(std::istream &in, SystemConfig base) {
    std::vector<double> distances, min_sinr;
    for (const auto &kv : read_pairs(in))
        if (!apply_config_key(base, kv, distances, min_sinr))
            bad(kv, "unknown key");
    finish_config(base, std::move(distances), std::move(min_sinr));
    return base;
}

SystemConfig load_config(const std::string &path, SystemConfig base) {
    return with_file(path, [&](std::istream &in) { return parse_config(in, base); });
}

void write_config(const SystemConfig &c, std::ostream &out) {
    out << "num_antennas = " << c.num_antennas << '\n'
        << "num_users = " << c.num_users << '\n'
        << "distances = " << join(c.distances) << '\n'
        << "path_loss_exponent = " << fmt17(c.path_loss_exponent) << '\n'
        << "noise_var = " << fmt17(c.noise_var) << '\n'
        << "bandwidth_hz = " << fmt17(c.bandwidth_hz) << '\n'
        << "min_sinr = " << join(c.min_sinr) << '\n'
        << "amp_efficiency = " << fmt17(c.amp_efficiency) << '\n'
        << "p_sta = " << fmt17(c.p_sta) << '\n'
        << "p_dyn = " << fmt17(c.p_dyn) << '\n'
        << "p_ava = " << fmt17(c.p_ava) << '\n'
        << "sca_tolerance = " << fmt17(c.sca_tolerance) << '\n'
        << "dinkelbach_tolerance = " << fmt17(c.dinkelbach_tolerance) << '\n'
        << "max_iterations = " << c.max_iterations << '\n'
        << "seed = " << c.seed << '\n';
}

SweepSpec parse_sweep_spec(std::istream &in) {
    SweepSpec spec;
    std::vector<double> distances, min_sinr;
    bool have_values = false;
    for (const auto &kv : read_pairs(in)) {
        if (apply_config_key(spec.base, kv, distances, min_sinr))
            continue;
        try {
            if (kv.key == "axis") {
                spec.axis = parse_axis(kv.value);
            } else if (kv.key == "values") {
                spec.values = as_values(kv);
                have_values = true;
            } else if (kv.key == "algorithms") {
                spec.algorithms.clear();
                for (const auto &a : split(kv.value, ','))
                    spec.algorithms.push_back(parse_algorithm(a));
            } else if (kv.key == "trials") {
                spec.trials = static_cast<int>(as_integer(kv));
            } else if (kv.key == "master_seed") {
                spec.master_seed = as_u64(kv);
            } else if (kv.key == "txsnr_db") {
                spec.txsnr_db = as_double(kv);
            } else if (kv.key == "record_time") {
                spec.record_time = as_bool(kv);
            } else if (kv.key == "zf_equal_power") {
                spec.zf_equal_power = as_bool(kv);
            } else {
                bad(kv, "unknown key");
            }
        } catch (const std::invalid_argument &e) {
            bad(kv, e.what());
        }
    }
    if (!have_values)
        throw std::runtime_error("sweep spec needs a values line");
    finish_config(spec.base, std::move(distances), std::move(min_sinr));
    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(std::string("invalid sweep spec: ") + e.what());
    }
    return spec;
}

SweepSpec load_sweep_spec(const std::string &path) {
    return with_file(path, [](std::istream &in) { return parse_sweep_spec(in); });
}

void dump_channels(const ChannelSet &channels, std::ostream &out) {
    for (int i = 0; i < channels.num_users(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        const std::size_t index = u < channels.permutation.size() ? channels.permutation[u] : u;
        const double d = u < channels.distances.size() ? channels.distances[u] : 0.0;
        out << index << ' ' << fmt17(d);
        write_vector(out, channels.channels[u]);
        out << '\n';
    }
}

ChannelSet parse_channels(std::istream &in) {
    ChannelSet set;
    for (auto &r : read_records(in, true)) {
        if (r.index < 0)
            throw std::runtime_error("negative user index");
        set.permutation.push_back(static_cast<std::size_t>(r.index));
        set.distances.push_back(r.distance);
        set.gains.push_back(r.v.squaredNorm());
        set.channels.push_back(std::move(r.v));
    }
    return set;
}

void dump_beams(const BeamformerSet &beams, std::ostream &out) {
    for (int i = 0; i < beams.num_users(); ++i) {
        out << i;
        write_vector(out, beams.w[static_cast<std::size_t>(i)]);
        out << '\n';
    }
}

BeamformerSet parse_beams(std::istream &in) {
    auto records = read_records(in, false);
    BeamformerSet beams;
    beams.w.resize(records.size());
    std::vector<bool> seen(records.size(), false);
    for (auto &r : records) {
        if (r.index < 0 || static_cast<std::size_t>(r.index) >= records.size() || seen[static_cast<std::size_t>(r.index)])
            throw std::runtime_error("beam indices must be 0..K-1 without repeats");
        seen[static_cast<std::size_t>(r.index)] = true;
        beams.w[static_cast<std::size_t>(r.index)] = std::move(r.v);
    }
    return beams;
}

ChannelSet load_channels(const std::string &path) {
    return with_file(path, [](std::istream &in) { return parse_channels(in); });
}

BeamformerSet load_beams(const std::string &path) {
    return with_file(path, [](std::istream &in) { return parse_beams(in); });
}

void save_channels(const ChannelSet &channels, const std::string &path) {
    to_file(path, [&](std::ostream &out) { dump_channels(channels, out); });
}

void save_beams(const BeamformerSet &beams, const std::string &path) {
    to_file(path, [&](std::ostream &out) { dump_beams(beams, out); });
}

} // namespace nomagee
