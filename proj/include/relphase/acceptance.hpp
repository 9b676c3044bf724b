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
#include <vector>

#include "relphase/report.hpp"

namespace relphase {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    /// the headline measured quantity
    double measured;
    /// what it is compared against, as text ("< 1e-10", ">= 0.99", ...)
    std::string threshold;
    std::string detail;
    /// wall-clock time; not part of any report file
    double seconds;
};

inline constexpr std::uint64_t kDefaultSeed = 20260415;

/// Criteria 1-9. Each call with the same seed performs the same computation.
std::vector<CriterionResult> run_numeric_criteria(std::uint64_t seed);

/// Criterion 10: a fresh run of criteria 1-9 renders byte-identical CSV and
/// JSON reports to `first`.
CriterionResult run_determinism_criterion(std::uint64_t seed, const std::vector<CriterionResult> &first);

/// All ten criteria, in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// Deterministic report (no timings) of the given results.
Report acceptance_report(const std::vector<CriterionResult> &results, std::uint64_t seed);

}  // namespace relphase
