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

#include "leggett/catalog.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "leggett/correlations.h"

#ifndef LEGGETT_DEFAULT_CATALOG
#define LEGGETT_DEFAULT_CATALOG "data/decay_modes.txt"
#endif

namespace leggett {

namespace {

double parse_number(const std::string& token, const std::string& where, const char* what) {
  double value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw CatalogError(where + ": cannot parse " + what + " '" + token + "'");
  }
  return value;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<DecayMode> parse_catalog(std::istream& in, const std::string& source) {
  std::vector<DecayMode> modes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;

    const std::string where = source + ":" + std::to_string(line_no);
    if (tokens.size() < 4 || tokens.size() > 5) {
      throw CatalogError(where + ": expected 4 or 5 columns, got " + std::to_string(tokens.size()));
    }
    DecayMode mode;
    mode.hyperon = tokens[0];
    mode.channel = tokens[1];
    mode.alpha = parse_number(tokens[2], where, "alpha");
    mode.alpha_uncertainty = parse_number(tokens[3], where, "uncertainty");
    if (tokens.size() == 5 && tokens[4] != "-") mode.cp_conjugate = tokens[4];

    if (std::abs(mode.alpha) > 1) {
      throw CatalogError(where + ": mode " + mode.id() + " has |alpha| > 1");
    }
    if (mode.alpha_uncertainty < 0) {
      throw CatalogError(where + ": mode " + mode.id() + " has negative uncertainty");
    }
    for (const auto& other : modes) {
      if (other.id() == mode.id()) throw CatalogError(where + ": duplicate mode " + mode.id());
    }
    modes.push_back(std::move(mode));
  }
  return modes;
}

std::vector<DecayMode> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog " + path.string());
  return parse_catalog(in, path.string());
}

std::string serialize_catalog(std::span<const DecayMode> modes) {
  std::string out;
  for (const auto& m : modes) {
    out += m.hyperon + ' ' + m.channel + ' ' + format_number(m.alpha) + ' ' +
           format_number(m.alpha_uncertainty) + ' ' + m.cp_conjugate.value_or("-") + '\n';
  }
  return out;
}

std::uint64_t catalog_hash(std::span<const DecayMode> modes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_catalog(modes)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string catalog_hash_hex(std::span<const DecayMode> modes) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(catalog_hash(modes)));
  return buf;
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("LEGGETT_CATALOG"); env != nullptr && *env != '\0') {
    return env;
  }
  return LEGGETT_DEFAULT_CATALOG;
}

std::string to_string(Mother m) { return m == Mother::EtaC ? "eta_c" : "chi_c0"; }

std::string to_string(SpinState s) { return s == SpinState::Singlet ? "singlet" : "triplet_m0"; }

Mother parse_mother(const std::string& text) {
  if (text == "eta_c" || text == "etac") return Mother::EtaC;
  if (text == "chi_c0" || text == "chic0") return Mother::ChiC0;
  throw std::invalid_argument("unknown production mother '" + text + "' (expected eta_c or chi_c0)");
}

TwoQubitState<double> ProductionChannel::state() const {
  return spin_state() == SpinState::Singlet ? singlet_state<double>() : triplet_m0_state<double>();
}

std::string ProductionChannel::name() const { return to_string(mother) + ":" + a.id() + "," + b.id(); }

namespace {

const DecayMode& find_mode(std::span<const DecayMode> catalog, const std::string& key) {
  const DecayMode* hit = nullptr;
  int matches = 0;
  for (const auto& m : catalog) {
    if (m.id() == key) return m;
    if (m.hyperon == key) {
      hit = &m;
      ++matches;
    }
  }
  if (matches == 1) return *hit;
  if (matches > 1) {
    throw std::invalid_argument("hyperon '" + key + "' has several modes; use <hyperon>/<channel>");
  }
  throw std::invalid_argument("unknown decay mode '" + key + "'");
}

}  // namespace

ProductionChannel resolve_channel(std::span<const DecayMode> catalog, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("channel '" + spec + "' must look like <mother>:<mode>[,<mode>]");
  }
  ProductionChannel ch;
  ch.mother = parse_mother(spec.substr(0, colon));
  const std::string rest = spec.substr(colon + 1);
  const auto comma = rest.find(',');
  ch.a = find_mode(catalog, rest.substr(0, comma));
  if (comma != std::string::npos) {
    ch.b = find_mode(catalog, rest.substr(comma + 1));
    return ch;
  }
  if (!ch.a.cp_conjugate) {
    throw std::invalid_argument("mode " + ch.a.id() + " has no CP conjugate; name the B side");
  }
  ch.b = find_mode(catalog, *ch.a.cp_conjugate);
  return ch;
}

double channel_correlation(const ProductionChannel& channel, const Direction<double>& a,
                           const Direction<double>& b) {
  const auto pa = channel.params_a();
  const auto pb = channel.params_b();
  if (channel.spin_state() == SpinState::Singlet) return correlation_singlet(pa, a, pb, b);
  return correlation_triplet_m0(pa, parity_flip_z(a), pb, b);
}

}  // namespace leggett
