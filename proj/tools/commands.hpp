// Copyright 2026 The relphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relphase/acceptance.hpp"
#include "relphase/fock.hpp"
#include "relphase/report.hpp"

namespace relphase::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kToleranceBreach = 3 };

struct RunConfig {
    std::string subcommand;
    /// `<re>` or `<modulus>@<phase>`
    std::string alpha = "1.0";
    std::string beta = "8.0";
    /// sweep range over |beta|: `<start>:<stop>:x<factor>` or `<start>:<stop>:+<step>`
    std::string beta_range = "2:16:x2";
    double beta_phase = 0.0;
    /// negative means "choose automatically"
    int cutoff = -1;
    int rel_cutoff = -1;
    int resolution = 256;
    /// phase-average: circular prior specs
    std::vector<std::string> priors;
    /// way-demo: comma-separated lattice prior specs
    std::string lattice_priors = "flat,delta:0,delta:5";
    int d = 31;
    std::string format = "csv";
    std::string out;
    int jobs = 1;
    std::uint64_t seed = kDefaultSeed;
};

/// Parses `1.5` or `1.5@0.7` (modulus@phase in radians).
cplx parse_amplitude(std::string_view text);

/// Expands a sweep range; endpoints are included when hit within 1e-9.
std::vector<double> parse_range(std::string_view text);

/// Each command builds its report, writes it to config.out (stdout when empty)
/// and returns an exit code. Config problems give 2 and numeric tolerance
/// breaches 3; the message goes to stderr.
int cmd_phase_average(const RunConfig &config);
int cmd_way_demo(const RunConfig &config);
int cmd_relphase(const RunConfig &config);
int cmd_sweep(const RunConfig &config);
int cmd_selftest(const RunConfig &config);

/// Report builders behind the commands (throw instead of returning codes).
Report phase_average_report(const RunConfig &config);
Report way_demo_report(const RunConfig &config);
Report relphase_report(const RunConfig &config);
Report sweep_report(const RunConfig &config);

int dispatch(const RunConfig &config);

}  // namespace relphase::cli
