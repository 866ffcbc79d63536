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

#ifndef LEGGETT_CATALOG_H
#define LEGGETT_CATALOG_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leggett/povm.h"
#include "leggett/quantum_core.h"

namespace leggett {

/// One weak two-body hadronic decay of a hyperon, with its signed asymmetry
/// parameter.
struct DecayMode {
  std::string hyperon;
  std::string channel;
  double alpha = 0;
  double alpha_uncertainty = 0;
  std::optional<std::string> cp_conjugate;

  /// "hyperon/channel", unique within a catalog.
  std::string id() const { return hyperon + "/" + channel; }

  friend bool operator==(const DecayMode&, const DecayMode&) = default;
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse the whitespace-separated catalog table
///
///   <hyperon> <channel> <alpha> <uncertainty> [<cp-conjugate> | -]
///
/// `#` starts a comment. Errors carry `source:line`.
std::vector<DecayMode> parse_catalog(std::istream& in, const std::string& source = "<stream>");
std::vector<DecayMode> load_catalog(const std::filesystem::path& path);

/// Canonical text form: one row per mode, single-space separated, shortest
/// round-trip number formatting, no comments.
std::string serialize_catalog(std::span<const DecayMode> modes);

/// FNV-1a 64 of the canonical serialization; tags every output file.
std::uint64_t catalog_hash(std::span<const DecayMode> modes);
std::string catalog_hash_hex(std::span<const DecayMode> modes);

/// $LEGGETT_CATALOG if set, else the data file shipped with the build.
std::filesystem::path default_catalog_path();

enum class Mother { EtaC, ChiC0 };
enum class SpinState { Singlet, TripletM0 };

std::string to_string(Mother m);
std::string to_string(SpinState s);
Mother parse_mother(const std::string& text);

/// A hyperon-antihyperon pair from charmonium decay. eta_c yields the spin
/// singlet; chi_c0 yields (for the pair along z) the m=0 triplet.
struct ProductionChannel {
  Mother mother = Mother::EtaC;
  DecayMode a;
  DecayMode b;

  SpinState spin_state() const {
    return mother == Mother::EtaC ? SpinState::Singlet : SpinState::TripletM0;
  }
  TwoQubitState<double> state() const;
  /// Decays act as unbiased POVMs with unsharpness equal to the decay parameter.
  MeasurementParams<double> params_a() const { return MeasurementParams<double>::unbiased(a.alpha); }
  MeasurementParams<double> params_b() const { return MeasurementParams<double>::unbiased(b.alpha); }
  /// e.g. "eta_c:SigmaPlus/p_pi0,SigmaBarMinus/pbar_pi0"
  std::string name() const;
};

/// Resolve "<mother>:<A>[,<B>]" against a catalog. A and B are either mode
/// ids or hyperon names with a single listed mode. B defaults to the unique
/// mode of A's CP conjugate.
ProductionChannel resolve_channel(std::span<const DecayMode> catalog, const std::string& spec);

/// The channel's correlation function for decay directions a, b. For chi_c0
/// the A-side axis is parity flipped first, which maps the triplet form onto
/// the singlet one up to an overall sign.
double channel_correlation(const ProductionChannel& channel, const Direction<double>& a,
                           const Direction<double>& b);

}  // namespace leggett

#endif  // LEGGETT_CATALOG_H
