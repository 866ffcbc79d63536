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

#ifndef LEGGETT_INEQUALITIES_H
#define LEGGETT_INEQUALITIES_H

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leggett/correlations.h"
#include "leggett/povm.h"
#include "leggett/settings.h"

namespace leggett {

/// Result of evaluating one inequality: `lhs <= bound` is the local (or
/// nonlocal-realist) constraint. Violation is strict, margin > 0, with no
/// tolerance; significance is the caller's business.
template <typename Scalar = double>
struct InequalityReport {
  std::string inequality;
  Scalar lhs{};
  Scalar bound{};
  Scalar margin{};
  bool violated = false;
  std::string settings_used;
  /// Every numeric input, in evaluation order, for reproducibility.
  std::vector<std::pair<std::string, Scalar>> inputs;
};

template <typename Scalar>
InequalityReport<Scalar> make_report(std::string inequality, Scalar lhs, Scalar bound,
                                     std::string settings_used,
                                     std::vector<std::pair<std::string, Scalar>> inputs) {
  InequalityReport<Scalar> r;
  r.inequality = std::move(inequality);
  r.lhs = lhs;
  r.bound = bound;
  r.margin = lhs - bound;
  r.violated = r.margin > Scalar(0);
  r.settings_used = std::move(settings_used);
  r.inputs = std::move(inputs);
  return r;
}

/// Probabilities entering the joint-distribution (CH-type) bound for one
/// outcome pair (j, k).
template <typename Scalar = double>
struct ChInputs {
  Scalar p_ab{};    // P_jk(a, b)
  Scalar p_abp{};   // P_jk(a, b')
  Scalar p_apb{};   // P_jk(a', b)
  Scalar p_apbp{};  // P_jk(a', b')
  Scalar p_ap{};    // P_j(a')
  Scalar p_b{};     // P_k(b)
};

/// CH-type bound for biased, unsharp measurements:
///
///   P_jk(a,b) - P_jk(a,b') + P_jk(a',b) + P_jk(a',b')
///     - (1 + k eta_b) P_j(a') - (1 + j eta_a) P_k(b)
///     + ((1 + j eta_a)(1 + k eta_b) - |alpha_a alpha_b|) / 2  <=  0.
template <typename Scalar>
InequalityReport<Scalar> ch_povm(const ChInputs<Scalar>& in, const MeasurementParams<Scalar>& pa,
                                 const MeasurementParams<Scalar>& pb, Outcome j, Outcome k) {
  using std::abs;
  const Scalar eps = Scalar(kExactTolerance);
  for (Scalar p : {in.p_ab, in.p_abp, in.p_apb, in.p_apbp, in.p_ap, in.p_b}) {
    if (!(p >= -eps && p <= 1 + eps)) {
      throw std::invalid_argument("ch_povm: probability outside [0, 1]");
    }
  }
  const Scalar sj = Scalar(sign_of(j));
  const Scalar sk = Scalar(sign_of(k));
  const Scalar ca = 1 + sj * pa.eta();
  const Scalar cb = 1 + sk * pb.eta();
  const Scalar lhs = in.p_ab - in.p_abp + in.p_apb + in.p_apbp - cb * in.p_ap - ca * in.p_b +
                     (ca * cb - abs(pa.alpha() * pb.alpha())) / 2;
  return make_report<Scalar>("ch_povm", lhs, Scalar(0),
                             std::string("j=") + (sj > 0 ? "+" : "-") + " k=" + (sk > 0 ? "+" : "-"),
                             {{"p_ab", in.p_ab},
                              {"p_abp", in.p_abp},
                              {"p_apb", in.p_apb},
                              {"p_apbp", in.p_apbp},
                              {"p_ap", in.p_ap},
                              {"p_b", in.p_b},
                              {"eta_a", pa.eta()},
                              {"alpha_a", pa.alpha()},
                              {"eta_b", pb.eta()},
                              {"alpha_b", pb.alpha()}});
}

/// Correlations at the four CHSH setting pairs.
template <typename Scalar = double>
struct ChshCorrelations {
  Scalar e_ab{};
  Scalar e_abp{};
  Scalar e_apb{};
  Scalar e_apbp{};
};

/// |E(a,b) - E(a,b') + E(a',b) + E(a',b')| <= 2 (|eta_a|+|alpha_a|)(|eta_b|+|alpha_b|).
template <typename Scalar>
InequalityReport<Scalar> chsh_povm(const ChshCorrelations<Scalar>& e,
                                   const MeasurementParams<Scalar>& pa,
                                   const MeasurementParams<Scalar>& pb) {
  using std::abs;
  const Scalar lhs = abs(e.e_ab - e.e_abp + e.e_apb + e.e_apbp);
  const Scalar bound = 2 * pa.response_bound() * pb.response_bound();
  return make_report<Scalar>("chsh_povm", lhs, bound, "four setting pairs",
                             {{"e_ab", e.e_ab},
                              {"e_abp", e.e_abp},
                              {"e_apb", e.e_apb},
                              {"e_apbp", e.e_apbp},
                              {"eta_a", pa.eta()},
                              {"alpha_a", pa.alpha()},
                              {"eta_b", pb.eta()},
                              {"alpha_b", pb.alpha()}});
}

/// Co-planar (x-z plane) settings a, a', b, b' at 0, 90, 45 and 135 degrees
/// from z. They maximize the projective singlet CHSH value at 2 sqrt(2).
template <typename Scalar = double>
struct FourSettings {
  Direction<Scalar> a;
  Direction<Scalar> a_prime;
  Direction<Scalar> b;
  Direction<Scalar> b_prime;
};

template <typename Scalar = double>
FourSettings<Scalar> tsirelson_settings() {
  using std::cos;
  using std::sin;
  auto in_xz = [](Scalar deg) {
    const Scalar rad = deg * std::numbers::pi_v<Scalar> / 180;
    return Direction<Scalar>::normalized(Vector3<Scalar>(sin(rad), 0, cos(rad)));
  };
  return {in_xz(0), in_xz(90), in_xz(45), in_xz(135)};
}

/// Correlations E(a_i, b_i) and E(a_i, b_i') for the three setting pairs.
template <typename Scalar = double>
struct TripleCorrelations {
  std::array<Scalar, 3> e_b{};
  std::array<Scalar, 3> e_b_prime{};
};

/// Evaluate `corr(a, b)` on every setting pair of a triple setting.
template <typename Scalar, typename CorrelationFn>
TripleCorrelations<Scalar> triple_correlations(const TripleSettings<Scalar>& settings,
                                               CorrelationFn&& corr) {
  TripleCorrelations<Scalar> out;
  for (int i = 0; i < 3; ++i) {
    out.e_b[i] = corr(settings.a[i], settings.b[i]);
    out.e_b_prime[i] = corr(settings.a[i], settings.b_prime[i]);
  }
  return out;
}

namespace detail {
template <typename Scalar>
void require_valid(const TripleSettings<Scalar>& settings, Arrangement expected, const char* who) {
  if (settings.arrangement != expected) {
    throw std::invalid_argument(std::string(who) + ": settings have the wrong arrangement");
  }
  const auto violations = validate(settings);
  if (!violations.empty()) {
    throw std::invalid_argument(std::string(who) + ": invalid settings (" +
                                violations.front().invariant + ")");
  }
}

template <typename Scalar>
std::vector<std::pair<std::string, Scalar>> echo(const TripleCorrelations<Scalar>& e, Scalar phi,
                                                 Scalar alpha_b) {
  std::vector<std::pair<std::string, Scalar>> in;
  for (int i = 0; i < 3; ++i) {
    in.emplace_back("e_b" + std::to_string(i + 1), e.e_b[i]);
    in.emplace_back("e_bp" + std::to_string(i + 1), e.e_b_prime[i]);
  }
  in.emplace_back("phi", phi);
  in.emplace_back("alpha_b", alpha_b);
  return in;
}
}  // namespace detail

/// Sum-form Leggett bound for biased, unsharp measurements
///
///   (1/3) sum_i |E(a_i,b_i) + E(a_i,b_i')| + (2|alpha_b|/3) |sin(phi/2)|  <=  2
///
/// where phi is the opening angle of each (b_i, b_i') pair.
template <typename Scalar>
InequalityReport<Scalar> leggett_sum(const TripleCorrelations<Scalar>& e, Scalar phi,
                                     Scalar alpha_b) {
  using std::abs;
  using std::sin;
  Scalar sum = 0;
  for (int i = 0; i < 3; ++i) sum += abs(e.e_b[i] + e.e_b_prime[i]);
  const Scalar lhs = sum / 3 + 2 * abs(alpha_b) / 3 * abs(sin(phi / 2));
  return make_report<Scalar>("leggett_sum", lhs, Scalar(2), "triple settings, difference arrangement",
                             detail::echo(e, phi, alpha_b));
}

template <typename Scalar>
InequalityReport<Scalar> leggett_sum(const TripleSettings<Scalar>& settings,
                                     const TripleCorrelations<Scalar>& e, Scalar alpha_b) {
  detail::require_valid(settings, Arrangement::Difference, "leggett_sum");
  return leggett_sum(e, settings.phi, alpha_b);
}

/// Difference-form Leggett bound, derived for unbiased B-side measurements on
/// sum-arrangement settings (b_i + b_i' mutually orthogonal):
///
///   (1/3) sum_i |E(a_i,b_i) - E(a_i,b_i')| + (2|alpha_b|/3) |cos(phi/2)|  <=  2
///
/// with phi the opening angle of the pairs actually measured.
template <typename Scalar>
InequalityReport<Scalar> leggett_diff(const TripleCorrelations<Scalar>& e, Scalar phi,
                                      Scalar alpha_b, Scalar eta_b) {
  using std::abs;
  using std::cos;
  if (eta_b != Scalar(0)) {
    throw std::invalid_argument("leggett_diff: only defined for an unbiased B side");
  }
  Scalar sum = 0;
  for (int i = 0; i < 3; ++i) sum += abs(e.e_b[i] - e.e_b_prime[i]);
  const Scalar lhs = sum / 3 + 2 * abs(alpha_b) / 3 * abs(cos(phi / 2));
  return make_report<Scalar>("leggett_diff", lhs, Scalar(2), "triple settings, sum arrangement",
                             detail::echo(e, phi, alpha_b));
}

template <typename Scalar>
InequalityReport<Scalar> leggett_diff(const TripleSettings<Scalar>& settings,
                                      const TripleCorrelations<Scalar>& e,
                                      const MeasurementParams<Scalar>& pb) {
  detail::require_valid(settings, Arrangement::Sum, "leggett_diff");
  return leggett_diff(e, settings.phi, pb.alpha(), pb.eta());
}

/// True iff (alpha_a^2 + 1/9) alpha_b^2 > 1: unbiased singlet correlations can
/// violate the sum-form Leggett bound for some phi.
template <typename Scalar>
bool leggett_violation_condition(Scalar alpha_a, Scalar alpha_b) {
  return (alpha_a * alpha_a + Scalar(1) / 9) * alpha_b * alpha_b > Scalar(1);
}

/// Unbiased singlet value of the sum-form left-hand side along the triple
/// setting: 2|alpha_a alpha_b| cos(phi/2) + (2|alpha_b|/3) sin(phi/2).
template <typename Scalar>
Scalar leggett_sum_singlet_curve(Scalar phi, Scalar alpha_a, Scalar alpha_b) {
  using std::abs;
  using std::cos;
  using std::sin;
  return 2 * abs(alpha_a * alpha_b) * abs(cos(phi / 2)) + 2 * abs(alpha_b) / 3 * abs(sin(phi / 2));
}

/// Maximizer of `leggett_sum_singlet_curve` over phi: 2 atan2(1/3, |alpha_a|).
/// alpha_a = 0 leaves only the sine term and gives pi.
template <typename Scalar>
Scalar optimal_phi(Scalar alpha_a) {
  using std::abs;
  using std::atan2;
  return 2 * atan2(Scalar(1) / 3, abs(alpha_a));
}

/// 2|alpha_b| sqrt(alpha_a^2 + 1/9), the curve maximum.
template <typename Scalar>
Scalar max_leggett_sum_singlet(Scalar alpha_a, Scalar alpha_b) {
  using std::abs;
  using std::sqrt;
  return 2 * abs(alpha_b) * sqrt(alpha_a * alpha_a + Scalar(1) / 9);
}

/// Positive root of alpha^4 + alpha^2/9 = 1 by bisection on [0, 1].
template <typename Scalar = double>
Scalar symmetric_alpha_threshold() {
  auto f = [](Scalar x) { return x * x * x * x + x * x / 9 - 1; };
  Scalar lo = 0;
  Scalar hi = 1;
  for (int it = 0; it < 200 && hi - lo > std::numeric_limits<Scalar>::epsilon(); ++it) {
    const Scalar mid = (lo + hi) / 2;
    if (f(mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return (lo + hi) / 2;
}

/// The same root from the quadratic in alpha^2.
template <typename Scalar = double>
Scalar symmetric_alpha_threshold_closed_form() {
  using std::sqrt;
  const Scalar ninth = Scalar(1) / 9;
  return sqrt((-ninth + sqrt(ninth * ninth + 4)) / 2);
}

}  // namespace leggett

#endif  // LEGGETT_INEQUALITIES_H
