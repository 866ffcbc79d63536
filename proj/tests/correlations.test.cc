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

#include "leggett/correlations.h"

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace leggett;
using D = Direction<double>;
using P = MeasurementParams<double>;

namespace {

constexpr Outcome kPlus = Outcome::Plus;
constexpr Outcome kMinus = Outcome::Minus;

// Single-side probability from the reduced state rho_A = Tr_B rho.
double reduced_probability(const TwoQubitState<double>& s, const P& p, const D& a, Outcome j) {
  const auto& rho = s.rho();
  ComplexMatrix2<double> rho_a = ComplexMatrix2<double>::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      rho_a(i, k) = rho(2 * i, 2 * k) + rho(2 * i + 1, 2 * k + 1);
    }
  }
  const double spin = (rho_a * pauli_dot(a)).trace().real();
  return (1 + sign_of(j) * (p.eta() + p.alpha() * spin)) / 2;
}

}  // namespace

TEST(joint_prob_matrix, singlet_sharp_parallel) {
  const auto t = joint_prob_matrix(singlet_state(), P(0, 1), D::z_axis(), P(0, 1), D::z_axis());
  EXPECT_NEAR(t(kPlus, kPlus), 0, 1e-12);
  EXPECT_NEAR(t(kMinus, kMinus), 0, 1e-12);
  EXPECT_NEAR(t(kPlus, kMinus), 0.5, 1e-12);
}

TEST(joint_prob_matrix, triplet_sharp_z) {
  const auto t = joint_prob_matrix(triplet_m0_state(), P(0, 1), D::z_axis(), P(0, 1), D::z_axis());
  EXPECT_NEAR(t(kPlus, kPlus), 0, 1e-12);
  EXPECT_NEAR(t(kPlus, kMinus), 0.5, 1e-12);
}

TEST(joint_prob_matrix, normalized_nonnegative_and_marginal_consistent) {
  fixtures::Gen gen(41);
  for (int t = 0; t < 1000; ++t) {
    const auto state = t % 2 ? singlet_state() : triplet_m0_state();
    const P pa = gen.params();
    const P pb = gen.params();
    const D a = gen.direction();
    const D b = gen.direction();
    const auto table = joint_prob_matrix(state, pa, a, pb, b);
    ASSERT_NEAR(table.total(), 1, 1e-12);
    for (Outcome j : {kPlus, kMinus}) {
      for (Outcome k : {kPlus, kMinus}) ASSERT_GE(table(j, k), -1e-12);
      ASSERT_NEAR(table.marginal_a(j), reduced_probability(state, pa, a, j), 1e-12);
    }
  }
}

TEST(joint_prob_singlet, matches_oracle) {
  fixtures::Gen gen(42);
  const auto s = singlet_state();
  for (int t = 0; t < 1000; ++t) {
    const P pa = gen.params();
    const P pb = gen.params();
    const D a = gen.direction();
    const D b = gen.direction();
    const auto table = joint_prob_matrix(s, pa, a, pb, b);
    for (Outcome j : {kPlus, kMinus}) {
      for (Outcome k : {kPlus, kMinus}) {
        ASSERT_NEAR(table(j, k), joint_prob_singlet(pa, a, pb, b, j, k), 1e-12);
      }
    }
  }
}

TEST(correlation_singlet, examples) {
  EXPECT_NEAR(correlation_singlet(P(0, 1), D::x_axis(), P(0, 1), D::x_axis()), -1, 1e-15);
  EXPECT_NEAR(correlation_singlet(P(0, 0.98), D::x_axis(), P(0, 0.98), D::x_axis()), -0.9604, 1e-12);
  EXPECT_NEAR(correlation_singlet(P(0.1, 0.5), D::x_axis(), P(0.2, 0.5), D::z_axis()), 0.02, 1e-15);
}

TEST(correlation_triplet_m0, examples) {
  EXPECT_NEAR(correlation_triplet_m0(P(0, 1), D::z_axis(), P(0, 1), D::z_axis()), -1, 1e-15);
  EXPECT_NEAR(correlation_triplet_m0(P(0, 0.98), D::x_axis(), P(0, 0.98), D::x_axis()), 0.9604, 1e-12);
  EXPECT_THROW(correlation_triplet_m0(P(0.1, 0.5), D::x_axis(), P(0, 1), D::x_axis()),
               std::invalid_argument);
}

TEST(correlations, closed_forms_match_oracle) {
  fixtures::Gen gen(43);
  const auto s = singlet_state();
  const auto tr = triplet_m0_state();
  for (int t = 0; t < 1000; ++t) {
    const D a = gen.direction();
    const D b = gen.direction();
    const P pa = gen.params();
    const P pb = gen.params();
    ASSERT_NEAR(correlation_singlet(pa, a, pb, b), correlation_oracle(s, pa, a, pb, b), 1e-12);
    ASSERT_NEAR(correlation_singlet(pa, a, pb, b), joint_prob_matrix(s, pa, a, pb, b).correlation(),
                1e-12);
    const P ua = gen.unbiased_params();
    const P ub = gen.unbiased_params();
    ASSERT_NEAR(correlation_triplet_m0(ua, a, ub, b), correlation_oracle(tr, ua, a, ub, b), 1e-12);
  }
}

TEST(correlations, bounded_by_response) {
  fixtures::Gen gen(44);
  for (int t = 0; t < 1000; ++t) {
    const P pa = gen.params();
    const P pb = gen.params();
    const double e = correlation_singlet(pa, gen.direction(), pb, gen.direction());
    ASSERT_LE(std::abs(e), pa.response_bound() * pb.response_bound() + 1e-12);
  }
}

TEST(parity_flip_z, examples_and_involution) {
  EXPECT_EQ(parity_flip_z(D::z_axis()), D(0, 0, -1));
  EXPECT_EQ(parity_flip_z(D::x_axis()), D::x_axis());
  EXPECT_EQ(parity_flip_z(D(0.6, 0, 0.8)), D(0.6, 0, -0.8));
  fixtures::Gen gen(45);
  for (int t = 0; t < 100; ++t) {
    const D d = gen.direction();
    ASSERT_EQ(parity_flip_z(parity_flip_z(d)), d);
  }
}

TEST(parity_flip_z, triplet_with_flipped_a_matches_singlet_magnitude) {
  // The two paths agree in magnitude and differ by a global sign.
  fixtures::Gen gen(46);
  for (int t = 0; t < 1000; ++t) {
    const P pa = gen.unbiased_params();
    const P pb = gen.unbiased_params();
    const D a = gen.direction();
    const D b = gen.direction();
    const double flipped = correlation_triplet_m0(pa, parity_flip_z(a), pb, b);
    const double singlet = correlation_singlet(pa, a, pb, b);
    ASSERT_NEAR(std::abs(flipped), std::abs(singlet), 1e-12);
    ASSERT_NEAR(flipped, -singlet, 1e-12);
  }
}
