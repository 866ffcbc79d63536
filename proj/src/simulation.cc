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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "leggett/correlations.h"

namespace leggett {

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

namespace {

// Two unit vectors completing `w` to a right-handed orthonormal basis.
std::pair<Vector3<double>, Vector3<double>> complete_basis(const Vector3<double>& w) {
  const Vector3<double> helper =
      std::abs(w.x()) < 0.6 ? Vector3<double>::UnitX() : Vector3<double>::UnitY();
  Vector3<double> e1 = w.cross(helper).normalized();
  Vector3<double> e2 = w.cross(e1);
  return {e1, e2};
}

}  // namespace

Vector3<double> sample_linear_cosine(const Vector3<double>& axis, double slope, StreamRng& rng) {
  // CDF of (1 + k c)/2 on [-1, 1] is ((c + 1) + k (c^2 - 1)/2)/2; its root in
  // rationalized form stays finite as k -> 0.
  const double xi = rng.uniform();
  const double k = slope;
  double c = (k - 2 + 4 * xi) / (1 + std::sqrt(std::max(0.0, (1 - k) * (1 - k) + 4 * k * xi)));
  c = std::clamp(c, -1.0, 1.0);
  const double psi = 2 * std::numbers::pi * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1 - c * c));
  const auto [e1, e2] = complete_basis(axis);
  return c * axis + s * (std::cos(psi) * e1 + std::sin(psi) * e2);
}

Direction<double> sample_isotropic(StreamRng& rng) {
  return Direction<double>::normalized(sample_linear_cosine(Vector3<double>::UnitZ(), 0.0, rng));
}

Direction<double> sample_single_decay(const Direction<double>& polarization, double alpha,
                                      StreamRng& rng) {
  if (std::abs(alpha) > 1) throw std::invalid_argument("sample_single_decay: |alpha| > 1");
  return Direction<double>::normalized(sample_linear_cosine(polarization.vec(), alpha, rng));
}

Direction<double> sample_single_decay(const Direction<double>& polarization, double alpha,
                                      std::uint64_t seed) {
  StreamRng rng(seed, 0);
  return sample_single_decay(polarization, alpha, rng);
}

EventSample sample_pair_decay(const ProductionChannel& channel, std::size_t n_events,
                              std::uint64_t seed, unsigned threads,
                              const std::string& catalog_hash) {
  if (n_events < 1) throw std::invalid_argument("sample_pair_decay: need at least one event");
  const Matrix3<double> c = spin_correlation_matrix(channel.state());
  const double k = channel.a.alpha * channel.b.alpha;
  // Positivity of the joint density needs |k| times the largest singular value <= 1.
  const double spectral = Eigen::JacobiSVD<Matrix3<double>>(c).singularValues()(0);
  if (std::abs(k) * spectral > 1 + kExactTolerance) {
    throw std::invalid_argument("sample_pair_decay: joint density would be negative");
  }
  const Matrix3<double> ct = c.transpose();

  EventSample sample;
  sample.seed = seed;
  sample.channel_name = channel.name();
  sample.mother = channel.mother;
  sample.alpha_a = channel.a.alpha;
  sample.alpha_b = channel.b.alpha;
  sample.catalog_hash = catalog_hash;
  sample.pairs.resize(n_events);

  const std::size_t n_chunks = (n_events + kChunkEvents - 1) / kChunkEvents;
  auto run_chunk = [&](std::size_t chunk) {
    StreamRng rng(seed, chunk);
    const std::size_t begin = chunk * kChunkEvents;
    const std::size_t end = std::min(n_events, begin + kChunkEvents);
    for (std::size_t i = begin; i < end; ++i) {
      const Direction<double> n_a = sample_isotropic(rng);
      const Vector3<double> axis = ct * n_a.vec();
      const double norm = axis.norm();
      Vector3<double> n_b;
      if (norm > 0) {
        n_b = sample_linear_cosine(axis / norm, k * norm, rng);
      } else {
        n_b = sample_linear_cosine(Vector3<double>::UnitZ(), 0.0, rng);
      }
      sample.pairs[i] = {n_a, Direction<double>::normalized(n_b)};
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_chunks)));
  if (workers == 1) {
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) run_chunk(chunk);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t chunk = t; chunk < n_chunks; chunk += workers) run_chunk(chunk);
      });
    }
  }
  return sample;
}

namespace {

void require_events(const EventSample& sample) {
  if (sample.n_events() < kMinEstimatorEvents) {
    throw std::invalid_argument("estimator needs at least " + std::to_string(kMinEstimatorEvents) +
                                " events, sample has " + std::to_string(sample.n_events()));
  }
}

// Mean and standard error of a per-event statistic, scaled.
template <typename Fn>
EstimatedCorrelation mean_and_error(const EventSample& sample, double scale, Fn&& per_event) {
  require_events(sample);
  const std::size_t n = sample.n_events();
  double sum = 0;
  double sum_sq = 0;
  for (const auto& p : sample.pairs) {
    const double x = per_event(p);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / static_cast<double>(n - 1));
  return {scale * mean, scale * std::sqrt(var / static_cast<double>(n)), n};
}

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

std::array<Direction<double>, 3> effective_a_axes(const EventSample& sample,
                                                  const TripleSettings<double>& settings) {
  std::array<Direction<double>, 3> a = settings.a;
  if (sample.spin_state() == SpinState::TripletM0) {
    for (auto& axis : a) axis = parity_flip_z(axis);
  }
  return a;
}

}  // namespace

EstimatedCorrelation estimate_correlation(const EventSample& sample, const Direction<double>& a,
                                          const Direction<double>& b) {
  return mean_and_error(sample, 9.0,
                        [&](const DecayPair& p) { return dot(p.n_a, a) * dot(p.n_b, b); });
}

EstimatedCorrelation estimate_correlation_hemisphere(const EventSample& sample,
                                                     const Direction<double>& a,
                                                     const Direction<double>& b) {
  return mean_and_error(sample, 4.0, [&](const DecayPair& p) {
    return sign(dot(p.n_a, a)) * sign(dot(p.n_b, b));
  });
}

CorrelationMatrixEstimate estimate_correlation_matrix(const EventSample& sample) {
  require_events(sample);
  CorrelationMatrixEstimate out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto est = mean_and_error(sample, 9.0, [&](const DecayPair& p) {
        return p.n_a.vec()(i) * p.n_b.vec()(j);
      });
      out.value(i, j) = est.e_hat;
      out.std_error(i, j) = est.std_error;
    }
  }
  return out;
}

LeggettEstimate estimate_leggett_lhs(const EventSample& sample, const TripleSettings<double>& settings,
                                     double alpha_b) {
  require_events(sample);
  if (settings.arrangement != Arrangement::Difference || !validate(settings).empty()) {
    throw std::invalid_argument("estimate_leggett_lhs: invalid triple settings");
  }
  const auto a = effective_a_axes(sample, settings);

  LeggettEstimate out;
  std::array<double, 3> pair_sum{};
  bool near_zero = false;
  for (int i = 0; i < 3; ++i) {
    out.correlations.e_b[i] = estimate_correlation(sample, a[i], settings.b[i]).e_hat;
    out.correlations.e_b_prime[i] = estimate_correlation(sample, a[i], settings.b_prime[i]).e_hat;
    pair_sum[i] = out.correlations.e_b[i] + out.correlations.e_b_prime[i];
    const Vector3<double> bsum = settings.b[i].vec() + settings.b_prime[i].vec();
    const auto sum_est = mean_and_error(sample, 9.0, [&](const DecayPair& p) {
      return dot(p.n_a, a[i]) * p.n_b.vec().dot(bsum);
    });
    if (std::abs(pair_sum[i]) < 2 * sum_est.std_error) near_zero = true;
  }
  out.report = leggett_sum(out.correlations, settings.phi, alpha_b);
  out.lhs_hat = out.report.lhs;

  if (!near_zero) {
    // Linearize sum_i |S_i| around the estimate: per-event 3 sum_i s_i (n_A.a_i)(n_B.(b_i+b_i')).
    std::array<Vector3<double>, 3> bsum;
    for (int i = 0; i < 3; ++i) bsum[i] = settings.b[i].vec() + settings.b_prime[i].vec();
    const auto lin = mean_and_error(sample, 3.0, [&](const DecayPair& p) {
      double g = 0;
      for (int i = 0; i < 3; ++i) g += sign(pair_sum[i]) * dot(p.n_a, a[i]) * p.n_b.vec().dot(bsum[i]);
      return g;
    });
    out.std_error = lin.std_error;
    out.error_method = "delta";
    return out;
  }

  // Bootstrap over events with a stream derived from the sample seed.
  constexpr int kReplicates = 200;
  const std::size_t n = sample.n_events();
  std::vector<double> replicate_lhs;
  replicate_lhs.reserve(kReplicates);
  for (int r = 0; r < kReplicates; ++r) {
    StreamRng rng(sample.seed, (std::uint64_t{1} << 62) + static_cast<std::uint64_t>(r));
    std::array<double, 6> sums{};
    for (std::size_t draw = 0; draw < n; ++draw) {
      const auto idx = std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
      const auto& p = sample.pairs[idx];
      for (int i = 0; i < 3; ++i) {
        const double pa = dot(p.n_a, a[i]);
        sums[2 * i] += pa * dot(p.n_b, settings.b[i]);
        sums[2 * i + 1] += pa * dot(p.n_b, settings.b_prime[i]);
      }
    }
    TripleCorrelations<double> e;
    for (int i = 0; i < 3; ++i) {
      e.e_b[i] = 9 * sums[2 * i] / static_cast<double>(n);
      e.e_b_prime[i] = 9 * sums[2 * i + 1] / static_cast<double>(n);
    }
    replicate_lhs.push_back(leggett_sum(e, settings.phi, alpha_b).lhs);
  }
  double mean = 0;
  for (double v : replicate_lhs) mean += v;
  mean /= kReplicates;
  double var = 0;
  for (double v : replicate_lhs) var += (v - mean) * (v - mean);
  out.std_error = std::sqrt(var / (kReplicates - 1));
  out.error_method = "bootstrap";
  return out;
}

namespace {

constexpr const char* kEventMagic = "leggett-events";
constexpr int kEventFormatVersion = 1;

void put_le(std::ostream& out, double value) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char bytes[8];
  std::memcpy(bytes, &bits, 8);
  out.write(bytes, 8);
}

double get_le(std::istream& in) {
  char bytes[8];
  if (!in.read(bytes, 8)) throw std::runtime_error("event file truncated");
  std::uint64_t bits;
  std::memcpy(&bits, bytes, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_event_file(const std::filesystem::path& path, const EventSample& sample) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write event file " + path.string());
  out << kEventMagic << ' ' << kEventFormatVersion << '\n'
      << "rng " << sample.rng_algorithm << '\n'
      << "seed " << sample.seed << '\n'
      << "channel " << sample.channel_name << '\n'
      << "mother " << to_string(sample.mother) << '\n'
      << "alpha_a " << exact(sample.alpha_a) << '\n'
      << "alpha_b " << exact(sample.alpha_b) << '\n'
      << "catalog_hash " << (sample.catalog_hash.empty() ? "-" : sample.catalog_hash) << '\n'
      << "n_events " << sample.n_events() << '\n'
      << "columns nA_x nA_y nA_z nB_x nB_y nB_z\n"
      << "encoding float64-le\n"
      << "end_header\n";
  for (const auto& p : sample.pairs) {
    for (int i = 0; i < 3; ++i) put_le(out, p.n_a.vec()(i));
    for (int i = 0; i < 3; ++i) put_le(out, p.n_b.vec()(i));
  }
  if (!out) throw std::runtime_error("failed writing event file " + path.string());
}

EventSample read_event_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open event file " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != std::string(kEventMagic) + " " + std::to_string(kEventFormatVersion)) {
    throw std::runtime_error("unsupported event file header '" + line + "'");
  }
  std::map<std::string, std::string> header;
  while (std::getline(in, line) && line != "end_header") {
    const auto space = line.find(' ');
    header[line.substr(0, space)] = space == std::string::npos ? "" : line.substr(space + 1);
  }
  if (line != "end_header") throw std::runtime_error("event file header not terminated");
  auto field = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw std::runtime_error(std::string("event file missing '") + key + "'");
    return it->second;
  };
  EventSample s;
  s.rng_algorithm = field("rng");
  s.seed = std::stoull(field("seed"));
  s.channel_name = field("channel");
  s.mother = parse_mother(field("mother"));
  s.alpha_a = std::stod(field("alpha_a"));
  s.alpha_b = std::stod(field("alpha_b"));
  s.catalog_hash = field("catalog_hash") == "-" ? "" : field("catalog_hash");
  const std::size_t n = std::stoull(field("n_events"));
  if (field("encoding") != "float64-le") throw std::runtime_error("unsupported event encoding");
  s.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector3<double> a, b;
    for (int c = 0; c < 3; ++c) a(c) = get_le(in);
    for (int c = 0; c < 3; ++c) b(c) = get_le(in);
    s.pairs.push_back({Direction<double>(a), Direction<double>(b)});
  }
  return s;
}

}  // namespace leggett
