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

#ifndef NOMAGEE_IO_HPP
#define NOMAGEE_IO_HPP

#include <iosfwd>
#include <string>

#include "nomagee/experiments.hpp"
#include "nomagee/noma.hpp"
#include "nomagee/scenario.hpp"

namespace nomagee {

// Flat key=value text. Keys are SystemConfig field names; '#' starts a comment.
// List fields (distances, min_sinr) take comma-separated values, or one value for every user.
// Unknown keys and malformed values throw std::runtime_error naming the line.
SystemConfig parse_config(std::istream &in, SystemConfig base = table1_config());
SystemConfig load_config(const std::string &path, SystemConfig base = table1_config());
void write_config(const SystemConfig &config, std::ostream &out);

// Config keys plus axis, values, algorithms, trials, master_seed, txsnr_db, record_time, zf_equal_power.
// `values` is a list or a start:step:stop range (inclusive).
SweepSpec parse_sweep_spec(std::istream &in);
SweepSpec load_sweep_spec(const std::string &path);

// One line per user, strongest first: "index distance re,im re,im ..." at 17 significant digits.
void dump_channels(const ChannelSet &channels, std::ostream &out);
// Keeps the file's order; gains are recomputed and the permutation recorded from the index column.
ChannelSet parse_channels(std::istream &in);
// One line per user: "index re,im re,im ...".
void dump_beams(const BeamformerSet &beams, std::ostream &out);
BeamformerSet parse_beams(std::istream &in);

ChannelSet load_channels(const std::string &path);
BeamformerSet load_beams(const std::string &path);
void save_channels(const ChannelSet &channels, const std::string &path);
void save_beams(const BeamformerSet &beams, const std::string &path);

} // namespace nomagee

#endif
