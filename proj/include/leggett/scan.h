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

#ifndef LEGGETT_SCAN_H
#define LEGGETT_SCAN_H

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "leggett/catalog.h"
#include "leggett/inequalities.h"
#include "leggett/povm.h"
#include "leggett/settings.h"

namespace leggett {

/// Quantum source and the two measurements evaluated by the closed forms.
struct QuantumSetup {
  SpinState spin_state = SpinState::Singlet;
  MeasurementParams<double> pa;
  MeasurementParams<double> pb;

  static QuantumSetup from_channel(const ProductionChannel& channel) {
    return {channel.spin_state(), channel.params_a(), channel.params_b()};
  }

  /// Closed-form correlation; for the triplet the A axis is parity flipped.
  double correlation(const Direction<double>& a, const Direction<double>& b) const;
};

/// Sum-form Leggett report at one triple setting, closed-form inputs.
InequalityReport<double> predict_leggett_sum(const QuantumSetup& setup,
                                             const TripleSettings<double>& settings);

/// A grid of inequality evaluations. `grid[p]` holds the coordinates of point
/// p along `axes`.
struct ScanResult {
  std::string kind;
  std::vector<std::string> axes;
  std::vector<std::vector<double>> grid;
  std::vector<double> lhs;
  double bound = 2;
  std::vector<bool> violated;
  /// Parameter echo (key, value) written into every output.
  std::vector<std::pair<std::string, std::string>> echo;

  std::size_t size() const { return lhs.size(); }
};

/// Leggett sum-form LHS over phi in [phi_min, phi_max] (radians, phi_min > 0),
/// `steps` >= 2 evenly spaced points, default frame.
ScanResult scan_phi(const QuantumSetup& setup, double phi_min, double phi_max, std::size_t steps);

/// Violation region over (alpha_a, alpha_b) in [lo, hi]^2. The mask is the
/// closed-form condition; `lhs` is the maximum over phi of the singlet curve.
ScanResult scan_region(double lo, double hi, std::size_t steps);

}  // namespace leggett

#endif  // LEGGETT_SCAN_H
