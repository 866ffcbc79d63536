// Copyright 2026 The Leggett-POVM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEGGETT_CHECK_H
#define LEGGETT_CHECK_H

#include <cstdint>
#include <string>
#include <vector>

namespace leggett {

struct CheckOptions {
  std::uint64_t seed = 20240601;
  std::size_t random_trials = 1000;
  std::size_t sampler_events = 200000;
  /// Negative control: negate the closed-form singlet correlation.
  bool inject_singlet_sign_flip = false;
};

struct CheckResult {
  std::string identity;
  /// Largest residual observed (in standard errors for statistical checks).
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
};

/// Closed forms against the 4x4 matrix algebra, the sampler against the
/// spin-correlation matrix, and the threshold root against its closed form.
std::vector<CheckResult> run_checks(const CheckOptions& options = {});

}  // namespace leggett

#endif  // LEGGETT_CHECK_H
