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

#include "leggett/check.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "leggett/catalog.h"
#include "leggett/correlations.h"
#include "leggett/inequalities.h"
#include "leggett/povm.h"
#include "leggett/quantum_core.h"
#include "leggett/scan.h"
#include "leggett/settings.h"
#include "leggett/simulation.h"

namespace leggett {

namespace {

using D = Direction<double>;
using Params = MeasurementParams<double>;

struct Inputs {
  explicit Inputs(std::uint64_t seed) : rng(seed, 0xc4ec) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }
  D direction() { return sample_isotropic(rng); }
  Params params(bool unbiased = false) {
    const double alpha = uniform(-1, 1);
    const double room = 1 - std::abs(alpha);
    return {unbiased ? 0.0 : uniform(-room, room), alpha};
  }

  StreamRng rng;
};

CheckResult finish(std::string identity, double residual, double tolerance) {
  return {std::move(identity), residual, tolerance, residual <= tolerance};
}

DecayMode mode(double alpha) { return {"X", "y", alpha, 0, std::nullopt}; }

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  std::vector<CheckResult> results;
  Inputs in(options.seed);
  const auto singlet = singlet_state<double>();
  const auto triplet = triplet_m0_state<double>();
  const auto identity = identity2<double>();

  auto singlet_closed = [&](const Params& pa, const D& a, const Params& pb, const D& b) {
    const double e = correlation_singlet(pa, a, pb, b);
    return options.inject_singlet_sign_flip ? -e : e;
  };

  {
    double worst = 0;
    for (std::size_t t = 0; t < options.random_trials; ++t) {
      const auto s = pauli_dot(in.direction());
      worst = std::max(worst, (s * s - identity).cwiseAbs().maxCoeff());
    }
    results.push_back(finish("pauli_dot(d)^2 == 1", worst, kExactTolerance));
  }

  {
    double worst_p = 0;
    double worst_e = 0;
    double worst_t = 0;
    for (std::size_t t = 0; t < options.random_trials; ++t) {
      const Params pa = in.params();
      const Params pb = in.params();
      const D a = in.direction();
      const D b = in.direction();
      const auto table = joint_prob_matrix(singlet, pa, a, pb, b);
      for (Outcome j : {Outcome::Plus, Outcome::Minus}) {
        for (Outcome k : {Outcome::Plus, Outcome::Minus}) {
          worst_p = std::max(worst_p, std::abs(table(j, k) - joint_prob_singlet(pa, a, pb, b, j, k)));
        }
      }
      worst_e = std::max(worst_e, std::abs(singlet_closed(pa, a, pb, b) -
                                           correlation_oracle(singlet, pa, a, pb, b)));
      const Params ua = in.params(true);
      const Params ub = in.params(true);
      worst_t = std::max(worst_t, std::abs(correlation_triplet_m0(ua, a, ub, b) -
                                           correlation_oracle(triplet, ua, a, ub, b)));
    }
    results.push_back(finish("singlet joint probabilities: closed form vs 4x4 oracle", worst_p,
                             kExactTolerance));
    results.push_back(
        finish("singlet correlation: closed form vs 4x4 oracle", worst_e, kExactTolerance));
    results.push_back(
        finish("triplet m=0 correlation: closed form vs 4x4 oracle", worst_t, kExactTolerance));
  }

  {
    double worst_complete = 0;
    double worst_kraus = 0;
    double worst_kraus_complete = 0;
    for (std::size_t t = 0; t < options.random_trials; ++t) {
      const Params p = in.params();
      const D n = in.direction();
      worst_complete = std::max(
          worst_complete,
          (povm_element(p, n, Outcome::Plus) + povm_element(p, n, Outcome::Minus) - identity)
              .cwiseAbs()
              .maxCoeff());
      const DecayAmplitudes<double> amps({in.uniform(-1, 1), in.uniform(-1, 1)},
                                         {in.uniform(-1, 1), in.uniform(-1, 1)});
      const double alpha = alpha_from_amplitudes(amps);
      const auto mp = decay_kraus(amps, n, Outcome::Plus);
      const auto mm = decay_kraus(amps, n, Outcome::Minus);
      const Params unbiased(0, alpha);
      worst_kraus = std::max(
          worst_kraus,
          (mp.adjoint() * mp - povm_element(unbiased, n, Outcome::Plus)).cwiseAbs().maxCoeff());
      worst_kraus_complete = std::max(
          worst_kraus_complete, (mp.adjoint() * mp + mm.adjoint() * mm - identity).cwiseAbs().maxCoeff());
    }
    results.push_back(finish("POVM completeness M+ + M- == 1", worst_complete, kExactTolerance));
    results.push_back(
        finish("decay Kraus M+^dag M+ == unbiased POVM element", worst_kraus, kExactTolerance));
    results.push_back(finish("decay Kraus completeness", worst_kraus_complete, kExactTolerance));
  }

  {
    const Matrix3<double> cs = spin_correlation_matrix(singlet);
    const Matrix3<double> ct = spin_correlation_matrix(triplet);
    const Matrix3<double> expected_t = Eigen::Vector3d(1, 1, -1).asDiagonal();
    results.push_back(finish("singlet <sigma_i sigma_j> == -delta_ij",
                             (cs + Matrix3<double>::Identity()).cwiseAbs().maxCoeff(),
                             kExactTolerance));
    results.push_back(finish("triplet m=0 <sigma_i sigma_j> == diag(1,1,-1)",
                             (ct - expected_t).cwiseAbs().maxCoeff(), kExactTolerance));
  }

  {
    const double root = symmetric_alpha_threshold<double>();
    const double closed = symmetric_alpha_threshold_closed_form<double>();
    const double f = root * root * root * root + root * root / 9 - 1;
    results.push_back(finish("threshold root: bisection vs quadratic formula",
                             std::max(std::abs(root - closed), std::abs(f)), kExactTolerance));
  }

  {
    double worst_curve = 0;
    double worst_chi = 0;
    for (std::size_t t = 0; t < options.random_trials; ++t) {
      const double phi = in.uniform(1e-6, std::numbers::pi);
      const double aa = in.uniform(-1, 1);
      const double ab = in.uniform(-1, 1);
      const auto settings = build_settings(phi);
      const Params pa(0, aa);
      const Params pb(0, ab);
      const auto e = triple_correlations(settings, [&](const D& a, const D& b) {
        return singlet_closed(pa, a, pb, b);
      });
      const double lhs = leggett_sum(settings, e, ab).lhs;
      worst_curve = std::max(worst_curve, std::abs(lhs - leggett_sum_singlet_curve(phi, aa, ab)));
      const QuantumSetup chi{SpinState::TripletM0, pa, pb};
      worst_chi = std::max(worst_chi, std::abs(predict_leggett_sum(chi, settings).lhs - lhs));
    }
    results.push_back(
        finish("Leggett sum evaluator vs closed singlet curve", worst_curve, kExactTolerance));
    results.push_back(finish("chi_c0 parity-flipped Leggett LHS == eta_c", worst_chi, kExactTolerance));
  }

  {
    // Statistical: report the largest |z| over the 3x3 moment matrix.
    constexpr double kSigmas = 5;
    for (Mother mother : {Mother::EtaC, Mother::ChiC0}) {
      ProductionChannel ch{mother, mode(0.9), mode(-0.8)};
      const auto sample = sample_pair_decay(ch, options.sampler_events, options.seed + 1);
      const auto est = estimate_correlation_matrix(sample);
      const Matrix3<double> target = 0.9 * -0.8 * spin_correlation_matrix(ch.state());
      double worst = 0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          worst = std::max(worst, std::abs(est.value(i, j) - target(i, j)) / est.std_error(i, j));
        }
      }
      results.push_back(finish("sampler 9<nA_i nB_j> == alpha_a alpha_b C (" + to_string(mother) +
                                   ", |z|)",
                               worst, kSigmas));
    }
    StreamRng rng(options.seed + 2, 0);
    const D u = D::normalized(Vector3<double>(0.3, -0.4, 0.85));
    const D a = D::normalized(Vector3<double>(-0.2, 0.5, 0.6));
    const double alpha = 0.7;
    double sum = 0;
    double sum_sq = 0;
    const std::size_t n = options.sampler_events;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 3 * dot(sample_single_decay(u, alpha, rng), a);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    results.push_back(finish("single decay 3<n.a> == alpha u.a (|z|)",
                             std::abs(mean - alpha * dot(u, a)) / se, kSigmas));
  }
  return results;
}

}  // namespace leggett
