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

#ifndef LEGGETT_IO_H
#define LEGGETT_IO_H

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "leggett/inequalities.h"
#include "leggett/scan.h"
#include "leggett/settings.h"

namespace leggett {

inline constexpr const char* kToolName = "leggett";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Plain-text triple settings:
///
///   leggett-settings 1
///   arrangement difference|sum
///   phi <radians>
///   a1 <x> <y> <z>    (a1..a3, b1..b3, bp1..bp3)
///
/// `#` starts a comment. Vectors must already be unit length.
void write_settings(std::ostream& out, const TripleSettings<double>& settings);
TripleSettings<double> read_settings(std::istream& in, const std::string& source = "<stream>");
TripleSettings<double> load_settings(const std::filesystem::path& path);

Json to_json(const InequalityReport<double>& report);
Json to_json(const TripleSettings<double>& settings);

/// `# key=value` metadata lines, a header row, then one numeric row per point.
void write_csv(std::ostream& out, const ScanResult& scan);

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

}  // namespace leggett

#endif  // LEGGETT_IO_H
