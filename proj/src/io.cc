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

#include "leggett/io.h"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace leggett {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

const char* vector_key(int group, int i) {
  static const char* keys[3][3] = {{"a1", "a2", "a3"}, {"b1", "b2", "b3"}, {"bp1", "bp2", "bp3"}};
  return keys[group][i];
}

}  // namespace

void write_settings(std::ostream& out, const TripleSettings<double>& settings) {
  out << "leggett-settings 1\n";
  out << "arrangement " << (settings.arrangement == Arrangement::Difference ? "difference" : "sum")
      << '\n';
  out << "phi " << format_double(settings.phi) << '\n';
  const std::array<const std::array<Direction<double>, 3>*, 3> groups = {&settings.a, &settings.b,
                                                                         &settings.b_prime};
  for (int g = 0; g < 3; ++g) {
    for (int i = 0; i < 3; ++i) {
      const auto& d = (*groups[g])[i];
      out << vector_key(g, i) << ' ' << format_double(d.x()) << ' ' << format_double(d.y()) << ' '
          << format_double(d.z()) << '\n';
    }
  }
}

TripleSettings<double> read_settings(std::istream& in, const std::string& source) {
  std::map<std::string, std::vector<double>> values;
  std::string arrangement = "difference";
  std::string line;
  int line_no = 0;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!saw_magic) {
      int version = 0;
      if (key != "leggett-settings" || !(fields >> version) || version != 1) {
        throw std::runtime_error(where + ": expected 'leggett-settings 1'");
      }
      saw_magic = true;
      continue;
    }
    if (key == "arrangement") {
      fields >> arrangement;
      continue;
    }
    std::vector<double> nums;
    for (std::string tok; fields >> tok;) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::runtime_error(where + ": bad number '" + tok + "'");
      }
      nums.push_back(v);
    }
    values[key] = std::move(nums);
  }
  if (!saw_magic) throw std::runtime_error(source + ": empty settings file");

  TripleSettings<double> s;
  if (arrangement == "difference") {
    s.arrangement = Arrangement::Difference;
  } else if (arrangement == "sum") {
    s.arrangement = Arrangement::Sum;
  } else {
    throw std::runtime_error(source + ": unknown arrangement '" + arrangement + "'");
  }
  auto get = [&](const std::string& key, std::size_t count) {
    auto it = values.find(key);
    if (it == values.end() || it->second.size() != count) {
      throw std::runtime_error(source + ": missing or malformed '" + key + "'");
    }
    return it->second;
  };
  s.phi = get("phi", 1)[0];
  std::array<std::array<Direction<double>, 3>*, 3> groups = {&s.a, &s.b, &s.b_prime};
  for (int g = 0; g < 3; ++g) {
    for (int i = 0; i < 3; ++i) {
      const auto v = get(vector_key(g, i), 3);
      try {
        (*groups[g])[i] = Direction<double>(v[0], v[1], v[2]);
      } catch (const std::invalid_argument&) {
        throw std::runtime_error(source + ": '" + vector_key(g, i) + "' is not a unit vector");
      }
    }
  }
  return s;
}

TripleSettings<double> load_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open settings file " + path.string());
  return read_settings(in, path.string());
}

Json to_json(const InequalityReport<double>& report) {
  Json j;
  j["inequality"] = report.inequality;
  j["lhs"] = report.lhs;
  j["bound"] = report.bound;
  j["margin"] = report.margin;
  j["violated"] = report.violated;
  j["settings_used"] = report.settings_used;
  Json inputs = Json::object();
  for (const auto& [k, v] : report.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  return j;
}

Json to_json(const TripleSettings<double>& settings) {
  Json j;
  j["arrangement"] = settings.arrangement == Arrangement::Difference ? "difference" : "sum";
  j["phi_rad"] = settings.phi;
  j["phi_deg"] = settings.phi * 180 / std::numbers::pi;
  auto vec = [](const Direction<double>& d) { return Json::array({d.x(), d.y(), d.z()}); };
  for (int i = 0; i < 3; ++i) {
    const std::string idx = std::to_string(i + 1);
    j["a" + idx] = vec(settings.a[i]);
    j["b" + idx] = vec(settings.b[i]);
    j["bp" + idx] = vec(settings.b_prime[i]);
  }
  return j;
}

void write_csv(std::ostream& out, const ScanResult& scan) {
  out << "# tool=" << kToolName << '\n';
  out << "# version=" << kToolVersion << '\n';
  out << "# kind=" << scan.kind << '\n';
  for (const auto& [k, v] : scan.echo) out << "# " << k << '=' << v << '\n';
  for (const auto& axis : scan.axes) out << axis << ',';
  out << "lhs,bound,margin,violated\n";
  for (std::size_t p = 0; p < scan.size(); ++p) {
    for (double x : scan.grid[p]) out << format_double(x) << ',';
    out << format_double(scan.lhs[p]) << ',' << format_double(scan.bound) << ','
        << format_double(scan.lhs[p] - scan.bound) << ',' << (scan.violated[p] ? 1 : 0) << '\n';
  }
}

}  // namespace leggett
