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

#ifndef NOMAGEE_SOLUTION_HPP
#define NOMAGEE_SOLUTION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "nomagee/conic.hpp"
#include "nomagee/noma.hpp"

namespace nomagee {

// Raised when the minimum-rate targets cannot be met within the power budget.
class InfeasibleInstance : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SolveStatus { converged, iteration_limit, infeasible, numerical_failure };

std::string to_string(SolveStatus s);

// One SCA iteration: n, alpha, sqrt(alpha), transmit power, sum rate (bits/s/Hz).
struct ScaTraceRow {
    int n = 0;
    double alpha = 0.0;
    double sqrt_alpha = 0.0;
    double p_tr = 0.0;
    double sum_rate = 0.0;
};

// One inner solve of the parametric method: outer m, inner n, chi, nu, transmit power, F = f1 - chi f2.
struct DinkelbachTraceRow {
    int outer = 0;
    int inner = 0;
    double chi = 0.0;
    double nu = 0.0;
    double p_tr = 0.0;
    double f_gap = 0.0;
};

struct Solution {
    BeamformerSet beams;
    PerformanceReport report;
    Decoding decoding = Decoding::sic;
    // SCA: alpha per iteration. Dinkelbach: chi per outer iteration. P-Min: power. SRM: sum rate.
    std::vector<double> objective_trace;
    int iterations_used = 0;
    SolveStatus status = SolveStatus::numerical_failure;

    std::vector<ScaTraceRow> sca_trace;
    std::vector<DinkelbachTraceRow> dinkelbach_trace;
    std::vector<BeamformerSet> iterates; // filled when AlgorithmOptions::keep_iterates

    bool ok() const { return status == SolveStatus::converged || status == SolveStatus::iteration_limit; }
    // ok(), or a numerical failure after at least one successful iteration (beams are then the last good iterate).
    bool usable() const { return ok() || (status == SolveStatus::numerical_failure && iterations_used > 0); }
};

struct AlgorithmOptions {
    const conic::Backend *backend = nullptr; // default_backend() when null
    bool keep_iterates = false;
    // Overrides of the config tolerances and caps; <= 0 keeps the config value.
    double tolerance = 0.0;
    int max_iterations = 0;

    const conic::Backend &resolved_backend() const { return backend ? *backend : conic::default_backend(); }
};

} // namespace nomagee

#endif
