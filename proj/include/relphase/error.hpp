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

#include <stdexcept>
#include <string>

namespace relphase {

/// Bad arguments: wrong dimensions, out-of-range indices, malformed priors.
/// The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
   public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

/// A numeric tolerance was breached (non-Hermitian input, negative
/// eigenvalue beyond psd_tol, truncation tail too large). Exit code 3.
class ToleranceError : public std::runtime_error {
   public:
    explicit ToleranceError(const std::string &what) : std::runtime_error(what) {}
};

/// The chosen photon-number cutoff leaves too much probability mass outside
/// the truncated space.
class TruncationError : public ToleranceError {
   public:
    TruncationError(const std::string &what, double tail_mass) : ToleranceError(what), tail_mass_(tail_mass) {}
    double tail_mass() const { return tail_mass_; }

   private:
    double tail_mass_;
};

}  // namespace relphase
