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

#ifndef LEGGETT_SIMULATION_H
#define LEGGETT_SIMULATION_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "leggett/catalog.h"
#include "leggett/inequalities.h"
#include "leggett/quantum_core.h"
#include "leggett/settings.h"

namespace leggett {

/// Name recorded with every sample; identifies the generator exactly.
inline constexpr const char* kRngAlgorithm = "mt19937_64/seed_seq(seed_lo,seed_hi,stream_lo,stream_hi)/53bit";

/// Events per independent RNG stream. Generation and reductions work in
/// whole chunks so results do not depend on the worker count.
inline constexpr std::size_t kChunkEvents = std::size_t{1} << 16;

/// One reproducible random stream: a 64-bit seed plus a stream index.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform double in [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Draw a direction with density (1 + slope * cos(theta)) / (4 pi) about
/// `axis`, |slope| <= 1, by closed-form inversion of the linear CDF in
/// cos(theta) and a uniform azimuth.
Vector3<double> sample_linear_cosine(const Vector3<double>& axis, double slope, StreamRng& rng);

Direction<double> sample_isotropic(StreamRng& rng);

/// Daughter direction of one polarized hyperon decay, distributed as
/// (1 + alpha u.n) / (4 pi).
Direction<double> sample_single_decay(const Direction<double>& polarization, double alpha,
                                      StreamRng& rng);
Direction<double> sample_single_decay(const Direction<double>& polarization, double alpha,
                                      std::uint64_t seed);

struct DecayPair {
  Direction<double> n_a;
  Direction<double> n_b;
};

/// Decay directions of entangled pairs together with everything needed to
/// regenerate them.
struct EventSample {
  std::vector<DecayPair> pairs;
  std::uint64_t seed = 0;
  std::string rng_algorithm = kRngAlgorithm;
  std::string channel_name;
  Mother mother = Mother::EtaC;
  double alpha_a = 0;
  double alpha_b = 0;
  std::string catalog_hash;

  std::size_t n_events() const { return pairs.size(); }
  SpinState spin_state() const {
    return mother == Mother::EtaC ? SpinState::Singlet : SpinState::TripletM0;
  }
};

/// Generate `n_events` pairs from W(n_A, n_B) = [1 + alpha_a alpha_b n_A^T C n_B] / (4 pi)^2
/// with C the spin-correlation matrix <sigma_i (x) sigma_j> of the channel's
/// state, taken from the 4x4 algebra. n_A is uniform; n_B follows the
/// conditional linear density about C^T n_A.
EventSample sample_pair_decay(const ProductionChannel& channel, std::size_t n_events,
                              std::uint64_t seed, unsigned threads = 1,
                              const std::string& catalog_hash = "");

struct EstimatedCorrelation {
  double e_hat = 0;
  double std_error = 0;
  std::size_t n_used = 0;
};

inline constexpr std::size_t kMinEstimatorEvents = 100;

/// Moment estimator 9 <(n_A.a)(n_B.b)>, unbiased for alpha_a alpha_b a^T C b.
EstimatedCorrelation estimate_correlation(const EventSample& sample, const Direction<double>& a,
                                          const Direction<double>& b);

/// Hemisphere estimator 4 <sign(n_A.a) sign(n_B.b)>, same expectation.
EstimatedCorrelation estimate_correlation_hemisphere(const EventSample& sample,
                                                     const Direction<double>& a,
                                                     const Direction<double>& b);

/// 9 <n_A,i n_B,j> with per-entry standard errors.
struct CorrelationMatrixEstimate {
  Matrix3<double> value;
  Matrix3<double> std_error;
};
CorrelationMatrixEstimate estimate_correlation_matrix(const EventSample& sample);

struct LeggettEstimate {
  double lhs_hat = 0;
  double std_error = 0;
  /// "delta" or "bootstrap".
  std::string error_method;
  TripleCorrelations<double> correlations;
  InequalityReport<double> report;
};

/// Sum-form Leggett left-hand side from estimated correlations. For chi_c0
/// samples the A axes are parity flipped, as for the closed form. Errors come
/// from the delta method on a per-event linearization; if any pair sum lies
/// within two standard errors of zero a seeded bootstrap is used instead.
LeggettEstimate estimate_leggett_lhs(const EventSample& sample, const TripleSettings<double>& settings,
                                     double alpha_b);

/// Versioned event file: text header terminated by "end_header\n", then six
/// little-endian float64 per event (n_A xyz, n_B xyz).
void write_event_file(const std::filesystem::path& path, const EventSample& sample);
EventSample read_event_file(const std::filesystem::path& path);

}  // namespace leggett

#endif  // LEGGETT_SIMULATION_H
