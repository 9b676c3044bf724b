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

#include <cstddef>

namespace relphase {

/// Numeric tolerances shared by every operation. Values are fixed project-wide
/// and echoed into every CLI report.
struct Tolerances {
    double norm = 1e-10;
    double herm = 1e-10;
    double psd = 1e-8;
    double trace = 1e-10;
    /// Maximum probability mass allowed outside a truncated Fock space.
    double tail = 1e-12;
    /// Largest joint dimension `tensor` will build.
    std::size_t max_dim = 1u << 20;
};

inline constexpr Tolerances kTol{};

}  // namespace relphase
