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

#include "leggett/scan.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leggett/correlations.h"

namespace leggett {

double QuantumSetup::correlation(const Direction<double>& a, const Direction<double>& b) const {
  if (spin_state == SpinState::Singlet) return correlation_singlet(pa, a, pb, b);
  return correlation_triplet_m0(pa, parity_flip_z(a), pb, b);
}

InequalityReport<double> predict_leggett_sum(const QuantumSetup& setup,
                                             const TripleSettings<double>& settings) {
  const auto e = triple_correlations(settings, [&](const Direction<double>& a,
                                                   const Direction<double>& b) {
    return setup.correlation(a, b);
  });
  return leggett_sum(settings, e, setup.pb.alpha());
}

ScanResult scan_phi(const QuantumSetup& setup, double phi_min, double phi_max, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("scan_phi: need at least 2 steps");
  if (!(phi_min > 0) || !(phi_max > phi_min) || phi_max > std::numbers::pi + kGeometryTolerance) {
    throw std::invalid_argument("scan_phi: range must satisfy 0 < phi_min < phi_max <= pi");
  }
  ScanResult out;
  out.kind = "scan-phi";
  out.axes = {"phi_rad"};
  out.bound = 2;
  out.grid.reserve(steps);
  out.lhs.reserve(steps);
  out.violated.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double phi =
        i + 1 == steps ? phi_max : phi_min + (phi_max - phi_min) * static_cast<double>(i) / (steps - 1);
    const auto report = predict_leggett_sum(setup, build_settings(phi));
    out.grid.push_back({phi});
    out.lhs.push_back(report.lhs);
    out.violated.push_back(report.violated);
  }
  return out;
}

ScanResult scan_region(double lo, double hi, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("scan_region: need at least 2 steps");
  if (!(lo >= 0) || !(hi <= 1) || !(hi > lo)) {
    throw std::invalid_argument("scan_region: grid must lie within [0, 1]");
  }
  ScanResult out;
  out.kind = "scan-region";
  out.axes = {"alpha_a", "alpha_b"};
  out.bound = 2;
  auto at = [&](std::size_t i) {
    return i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  };
  for (std::size_t i = 0; i < steps; ++i) {
    for (std::size_t j = 0; j < steps; ++j) {
      const double aa = at(i);
      const double ab = at(j);
      out.grid.push_back({aa, ab});
      out.lhs.push_back(max_leggett_sum_singlet(aa, ab));
      out.violated.push_back(leggett_violation_condition(aa, ab));
    }
  }
  return out;
}

}  // namespace leggett
