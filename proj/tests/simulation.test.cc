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

#include "leggett/simulation.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <vector>

#include "gtest/gtest.h"
#include "leggett/catalog.h"
#include "leggett/correlations.h"
#include "leggett/inequalities.h"
#include "leggett/settings.h"

#include "test_util.h"

using namespace leggett;
using D = Direction<double>;
using P = MeasurementParams<double>;

namespace {

ProductionChannel make_channel(Mother mother, double alpha_a, double alpha_b) {
  return {mother, {"A", "x", alpha_a, 0, std::nullopt}, {"B", "y", alpha_b, 0, std::nullopt}};
}

// Closed-form target computed without the library: alpha_a alpha_b a^T C b.
double target(Mother mother, double alpha_a, double alpha_b, const D& a, const D& b) {
  const Eigen::Vector3d diag = mother == Mother::EtaC ? Eigen::Vector3d(-1, -1, -1) : Eigen::Vector3d(1, 1, -1);
  return alpha_a * alpha_b * a.vec().dot(diag.asDiagonal() * b.vec());
}

struct Moments {
  double mean = 0;
  double se = 0;
};

template <typename Fn>
Moments moments(std::size_t n, Fn&& draw) {
  double sum = 0;
  double sum_sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  return {mean, std::sqrt((sum_sq / n - mean * mean) / (n - 1))};
}

bool same_bits(const EventSample& x, const EventSample& y) {
  if (x.n_events() != y.n_events()) return false;
  for (std::size_t i = 0; i < x.n_events(); ++i) {
    for (int c = 0; c < 3; ++c) {
      if (std::memcmp(&x.pairs[i].n_a.vec()(c), &y.pairs[i].n_a.vec()(c), sizeof(double)) != 0 ||
          std::memcmp(&x.pairs[i].n_b.vec()(c), &y.pairs[i].n_b.vec()(c), sizeof(double)) != 0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(stream_rng, uniform_range_and_streams_differ) {
  StreamRng a(1, 0);
  StreamRng b(1, 1);
  StreamRng c(1, 0);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    ASSERT_GE(x, 0);
    ASSERT_LT(x, 1);
    equal += x == b.uniform();
    ASSERT_EQ(x, c.uniform());
  }
  EXPECT_EQ(equal, 0);
}

TEST(sample_single_decay, isotropic_when_unpolarized) {
  StreamRng rng(3, 0);
  constexpr std::size_t kN = 200000;
  for (int axis = 0; axis < 3; ++axis) {
    StreamRng r(3, axis);
    const auto m = moments(kN, [&] { return sample_single_decay(D::z_axis(), 0.0, r).vec()(axis); });
    EXPECT_LT(std::abs(m.mean), 5 * m.se);
  }
}

TEST(sample_single_decay, sharp_forward_moment) {
  StreamRng rng(4, 0);
  const auto m = moments(400000, [&] { return sample_single_decay(D::z_axis(), 1.0, rng).z(); });
  EXPECT_NEAR(m.mean, 1.0 / 3, 5 * m.se);
}

TEST(sample_single_decay, moment_estimator_recovers_polarization) {
  fixtures::Gen gen(71);
  StreamRng rng(5, 0);
  for (int t = 0; t < 5; ++t) {
    const D u = gen.direction();
    const D a = gen.direction();
    const double alpha = gen.uniform(-1, 1);
    const auto m = moments(200000, [&] { return 3 * dot(sample_single_decay(u, alpha, rng), a); });
    EXPECT_NEAR(m.mean, alpha * dot(u, a), 5 * m.se);
  }
  EXPECT_THROW(sample_single_decay(D::z_axis(), 1.1, rng), std::invalid_argument);
}

TEST(sample_single_decay, seed_overload_is_deterministic) {
  EXPECT_EQ(sample_single_decay(D::x_axis(), 0.5, 99u), sample_single_decay(D::x_axis(), 0.5, 99u));
}

TEST(sample_pair_decay, unit_directions_and_metadata) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.5, -0.5), 1000, 7, 1, "abc");
  EXPECT_EQ(s.n_events(), 1000u);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.catalog_hash, "abc");
  EXPECT_EQ(s.rng_algorithm, kRngAlgorithm);
  for (const auto& p : s.pairs) {
    ASSERT_NEAR(p.n_a.vec().norm(), 1, 1e-12);
    ASSERT_NEAR(p.n_b.vec().norm(), 1, 1e-12);
  }
  EXPECT_THROW(sample_pair_decay(make_channel(Mother::EtaC, 0.5, 0.5), 0, 1), std::invalid_argument);
}

TEST(sample_pair_decay, uncorrelated_when_one_side_is_blind) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.9, 0.0), 200000, 8);
  const auto est = estimate_correlation_matrix(s);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(est.value(i, j)), 5 * est.std_error(i, j));
  }
}

TEST(sample_pair_decay, sharp_singlet_dot_moment) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 1.0, 1.0), 400000, 9);
  std::size_t i = 0;
  const auto m = moments(s.n_events(), [&] {
    const auto& p = s.pairs[i++];
    return dot(p.n_a, p.n_b);
  });
  EXPECT_NEAR(m.mean, -1.0 / 3, 5 * m.se);
}

TEST(sample_pair_decay, correlation_matrix_converges) {
  for (Mother mother : {Mother::EtaC, Mother::ChiC0}) {
    const auto s = sample_pair_decay(make_channel(mother, -0.98, 0.98), 1000000, 10);
    const auto est = estimate_correlation_matrix(s);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const D ei = D::normalized(Eigen::Vector3d::Unit(i));
        const D ej = D::normalized(Eigen::Vector3d::Unit(j));
        EXPECT_NEAR(est.value(i, j), target(mother, -0.98, 0.98, ei, ej), 5 * est.std_error(i, j))
            << to_string(mother) << " " << i << j;
      }
    }
  }
}

TEST(sample_pair_decay, marginals_are_isotropic) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.98, -0.98), 100000, 11);
  std::vector<double> ca;
  std::vector<double> cb;
  std::vector<double> xa;
  for (const auto& p : s.pairs) {
    ca.push_back(p.n_a.z());
    cb.push_back(p.n_b.z());
    xa.push_back(p.n_b.x());
  }
  EXPECT_GT(fixtures::ks_uniform_pvalue(ca, -1, 1), 0.01);
  EXPECT_GT(fixtures::ks_uniform_pvalue(cb, -1, 1), 0.01);
  EXPECT_GT(fixtures::ks_uniform_pvalue(xa, -1, 1), 0.01);
}

TEST(sample_pair_decay, deterministic_across_runs_and_threads) {
  const auto ch = make_channel(Mother::ChiC0, 0.75, -0.75);
  const std::size_t n = 3 * kChunkEvents + 123;
  const auto one = sample_pair_decay(ch, n, 12, 1);
  EXPECT_TRUE(same_bits(one, sample_pair_decay(ch, n, 12, 1)));
  EXPECT_TRUE(same_bits(one, sample_pair_decay(ch, n, 12, 3)));
  EXPECT_TRUE(same_bits(one, sample_pair_decay(ch, n, 12, 8)));
  EXPECT_FALSE(same_bits(one, sample_pair_decay(ch, n, 13, 1)));
}

TEST(estimate_correlation, rejects_small_samples) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.5, 0.5), 10, 1);
  EXPECT_THROW(estimate_correlation(s, D::x_axis(), D::x_axis()), std::invalid_argument);
  EXPECT_THROW(estimate_leggett_lhs(s, build_settings(1.0), 0.5), std::invalid_argument);
}

TEST(estimate_correlation, singlet_example) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.98, 0.98), 1000000, 14);
  const auto est = estimate_correlation(s, D::z_axis(), D::z_axis());
  EXPECT_NEAR(est.e_hat, -0.9604, 3 * est.std_error);
  // <(n_A.z)^2 (n_B.z)^2> = 1/9 since the correlated term is odd, so the
  // per-event spread is sqrt(1/9 - (0.9604/9)^2) ~ 0.32.
  EXPECT_NEAR(est.std_error, 9 * std::sqrt(1.0 / 9 - std::pow(0.9604 / 9, 2)) / 1e3, 0.05e-3);
  EXPECT_EQ(est.n_used, 1000000u);
}

TEST(estimate_correlation, sign_symmetry_is_exact) {
  fixtures::Gen gen(72);
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.7, -0.6), 5000, 15);
  const D a = gen.direction();
  const D b = gen.direction();
  EXPECT_EQ(estimate_correlation(s, a, b).e_hat, estimate_correlation(s, -a, -b).e_hat);
}

TEST(estimate_correlation, blind_side_gives_zero) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.0, 0.9), 200000, 16);
  const auto est = estimate_correlation(s, D::x_axis(), D::x_axis());
  EXPECT_LT(std::abs(est.e_hat), 5 * est.std_error);
}

TEST(estimate_correlation, hemisphere_estimator_agrees) {
  fixtures::Gen gen(73);
  const auto s = sample_pair_decay(make_channel(Mother::ChiC0, 0.9, 0.8), 500000, 17);
  for (int t = 0; t < 5; ++t) {
    const D a = gen.direction();
    const D b = gen.direction();
    const auto est = estimate_correlation_hemisphere(s, a, b);
    EXPECT_NEAR(est.e_hat, target(Mother::ChiC0, 0.9, 0.8, a, b), 5 * est.std_error);
  }
}

TEST(estimate_correlation, consistent_over_independent_runs) {
  fixtures::Gen gen(74);
  const D a = gen.direction();
  const D b = gen.direction();
  const auto ch = make_channel(Mother::EtaC, 0.98, -0.98);
  const double truth = target(Mother::EtaC, 0.98, -0.98, a, b);
  int inside = 0;
  for (int run = 0; run < 500; ++run) {
    const auto s = sample_pair_decay(ch, 10000, 1000 + run);
    const auto est = estimate_correlation(s, a, b);
    inside += std::abs(est.e_hat - truth) < 5 * est.std_error;
  }
  EXPECT_GE(inside, 495);
}

TEST(estimate_correlation, error_scales_as_inverse_sqrt_n) {
  const auto ch = make_channel(Mother::EtaC, 0.98, -0.98);
  const D a = D::x_axis();
  const D b = D::normalized(Eigen::Vector3d(1, 1, 0));
  const double small = estimate_correlation(sample_pair_decay(ch, 10000, 18), a, b).std_error;
  const double large = estimate_correlation(sample_pair_decay(ch, 40000, 19), a, b).std_error;
  EXPECT_NEAR(large / small, 0.5, 0.05);
}

TEST(estimate_leggett_lhs, sigma_pair_at_optimum) {
  const double phi = optimal_phi(0.98);
  const auto settings = build_settings(phi);
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, -0.98, 0.98), 10000000, 20, 4);
  const auto est = estimate_leggett_lhs(s, settings, 0.98);
  EXPECT_EQ(est.error_method, "delta");
  EXPECT_NEAR(est.lhs_hat, max_leggett_sum_singlet(0.98, 0.98), 3 * est.std_error);
  EXPECT_GT(est.std_error, 0);
  EXPECT_EQ(est.report.lhs, est.lhs_hat);
}

TEST(estimate_leggett_lhs, chi_c0_path_matches_closed_form) {
  const double phi = optimal_phi(0.98);
  const auto s = sample_pair_decay(make_channel(Mother::ChiC0, -0.98, 0.98), 1000000, 21);
  const auto est = estimate_leggett_lhs(s, build_settings(phi), 0.98);
  EXPECT_NEAR(est.lhs_hat, max_leggett_sum_singlet(0.98, 0.98), 5 * est.std_error);
}

TEST(estimate_leggett_lhs, lambda_like_stays_below_bound) {
  const double phi = optimal_phi(0.75);
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.75, -0.75), 1000000, 22);
  const auto est = estimate_leggett_lhs(s, build_settings(phi), -0.75);
  EXPECT_NEAR(max_leggett_sum_singlet(0.75, 0.75), 1.231, 1e-3);
  EXPECT_NEAR(est.lhs_hat, max_leggett_sum_singlet(0.75, 0.75), 5 * est.std_error);
  EXPECT_GT((2 - est.lhs_hat) / est.std_error, 20);
  EXPECT_FALSE(est.report.violated);
}

TEST(estimate_leggett_lhs, blind_b_side_uses_bootstrap) {
  const auto s = sample_pair_decay(make_channel(Mother::EtaC, 0.9, 0.0), 20000, 23);
  const auto est = estimate_leggett_lhs(s, build_settings(1.0), 0.0);
  EXPECT_EQ(est.error_method, "bootstrap");
  EXPECT_GT(est.std_error, 0);
  double raw = 0;
  for (int i = 0; i < 3; ++i) raw += std::abs(est.correlations.e_b[i] + est.correlations.e_b_prime[i]);
  EXPECT_DOUBLE_EQ(est.lhs_hat, raw / 3);
  EXPECT_LT(est.lhs_hat, 0.2);
  // Same sample, same bootstrap streams.
  EXPECT_EQ(estimate_leggett_lhs(s, build_settings(1.0), 0.0).std_error, est.std_error);
}

TEST(event_file, round_trip) {
  const auto s = sample_pair_decay(make_channel(Mother::ChiC0, -0.39, 0.39), 1234, 24, 1, "00ff");
  const auto path = std::filesystem::temp_directory_path() / "leggett_event_file_test.events";
  write_event_file(path, s);
  const auto back = read_event_file(path);
  std::filesystem::remove(path);
  EXPECT_TRUE(same_bits(s, back));
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(back.mother, s.mother);
  EXPECT_EQ(back.alpha_a, s.alpha_a);
  EXPECT_EQ(back.alpha_b, s.alpha_b);
  EXPECT_EQ(back.catalog_hash, "00ff");
  EXPECT_EQ(back.channel_name, s.channel_name);
  EXPECT_EQ(back.rng_algorithm, s.rng_algorithm);
  EXPECT_THROW(read_event_file(path), std::runtime_error);
}
