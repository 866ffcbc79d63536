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

#ifndef LEGGETT_CORRELATIONS_H
#define LEGGETT_CORRELATIONS_H

#include <array>
#include <stdexcept>

#include "leggett/povm.h"
#include "leggett/quantum_core.h"

namespace leggett {

/// Joint outcome probabilities P_jk, indexed [j][k] with 0 = '+' and 1 = '-'.
template <typename Scalar = double>
struct JointProbTable {
  std::array<std::array<Scalar, 2>, 2> p{};

  static constexpr int index(Outcome o) { return o == Outcome::Plus ? 0 : 1; }

  Scalar operator()(Outcome j, Outcome k) const { return p[index(j)][index(k)]; }

  Scalar total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }

  /// P_++ - P_+- - P_-+ + P_--.
  Scalar correlation() const { return p[0][0] - p[0][1] - p[1][0] + p[1][1]; }

  Scalar marginal_a(Outcome j) const { return p[index(j)][0] + p[index(j)][1]; }
  Scalar marginal_b(Outcome k) const { return p[0][index(k)] + p[1][index(k)]; }
};

/// P_jk(a, b) = <M_j(a) (x) M_k(b)> computed by explicit 4x4 algebra.
template <typename Scalar>
JointProbTable<Scalar> joint_prob_matrix(const TwoQubitState<Scalar>& state,
                                         const MeasurementParams<Scalar>& pa,
                                         const Direction<Scalar>& a,
                                         const MeasurementParams<Scalar>& pb,
                                         const Direction<Scalar>& b) {
  JointProbTable<Scalar> table;
  for (Outcome j : {Outcome::Plus, Outcome::Minus}) {
    for (Outcome k : {Outcome::Plus, Outcome::Minus}) {
      table.p[JointProbTable<Scalar>::index(j)][JointProbTable<Scalar>::index(k)] =
          expectation(state, tensor(povm_element(pa, a, j), povm_element(pb, b, k)));
    }
  }
  return table;
}

/// <(M_+ - M_-)(a) (x) (M_+ - M_-)(b)> via the matrix oracle.
template <typename Scalar>
Scalar correlation_oracle(const TwoQubitState<Scalar>& state, const MeasurementParams<Scalar>& pa,
                          const Direction<Scalar>& a, const MeasurementParams<Scalar>& pb,
                          const Direction<Scalar>& b) {
  return expectation(state, tensor(povm_observable(pa, a), povm_observable(pb, b)));
}

/// Closed-form singlet joint probability
///   P_jk = ((1 + j eta_a)(1 + k eta_b) - jk alpha_a alpha_b a.b) / 4,
/// the sign fixed by sum_jk jk P_jk = E(a, b).
template <typename Scalar>
Scalar joint_prob_singlet(const MeasurementParams<Scalar>& pa, const Direction<Scalar>& a,
                          const MeasurementParams<Scalar>& pb, const Direction<Scalar>& b,
                          Outcome j, Outcome k) {
  const Scalar sj = Scalar(sign_of(j));
  const Scalar sk = Scalar(sign_of(k));
  return ((1 + sj * pa.eta()) * (1 + sk * pb.eta()) - sj * sk * pa.alpha() * pb.alpha() * dot(a, b)) /
         Scalar(4);
}

/// Closed-form singlet correlation eta_a eta_b - alpha_a alpha_b (a.b).
template <typename Scalar>
Scalar correlation_singlet(const MeasurementParams<Scalar>& pa, const Direction<Scalar>& a,
                           const MeasurementParams<Scalar>& pb, const Direction<Scalar>& b) {
  return pa.eta() * pb.eta() - pa.alpha() * pb.alpha() * dot(a, b);
}

/// (a_x, a_y, -a_z): inversion of the z component.
template <typename Scalar>
Direction<Scalar> parity_flip_z(const Direction<Scalar>& d) {
  return Direction<Scalar>(Vector3<Scalar>(d.x(), d.y(), -d.z()));
}

/// Closed-form m=0 triplet correlation alpha_a alpha_b (P_z a . b), as printed
/// for unbiased decay measurements. Note that the matrix oracle gives the
/// same value; for a parity-flipped A axis it equals -E_singlet(a, b).
template <typename Scalar>
Scalar correlation_triplet_m0(const MeasurementParams<Scalar>& pa, const Direction<Scalar>& a,
                              const MeasurementParams<Scalar>& pb, const Direction<Scalar>& b) {
  if (pa.eta() != Scalar(0) || pb.eta() != Scalar(0)) {
    throw std::invalid_argument("correlation_triplet_m0: defined for unbiased measurements only");
  }
  return pa.alpha() * pb.alpha() * (a.x() * b.x() + a.y() * b.y() - a.z() * b.z());
}

}  // namespace leggett

#endif  // LEGGETT_CORRELATIONS_H
