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

// Command-line front end: predictions, scans, simulation and self-checks.
//
// Exit codes: 0 success (for `simulate`: violation observed at the requested
// significance), 1 error, 2 `simulate` ran but saw no significant violation,
// 3 `check` found a failing identity.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leggett/catalog.h"
#include "leggett/check.h"
#include "leggett/inequalities.h"
#include "leggett/io.h"
#include "leggett/scan.h"
#include "leggett/settings.h"
#include "leggett/simulation.h"

namespace {

using namespace leggett;

constexpr double kDegree = std::numbers::pi / 180;

struct CommonOptions {
  std::string channel = "eta_c:SigmaPlus";
  std::string catalog;
  std::optional<double> alpha_a;
  std::optional<double> alpha_b;
  double eta_a = 0;
  double eta_b = 0;
  std::uint64_t seed = 1;
  std::string out;
};

struct Context {
  std::vector<DecayMode> catalog;
  std::string catalog_path;
  std::string catalog_hash;
  ProductionChannel channel;
};

Context load_context(const CommonOptions& opt) {
  Context ctx;
  ctx.catalog_path = opt.catalog.empty() ? default_catalog_path().string() : opt.catalog;
  ctx.catalog = load_catalog(ctx.catalog_path);
  ctx.catalog_hash = catalog_hash_hex(ctx.catalog);
  ctx.channel = resolve_channel(ctx.catalog, opt.channel);
  for (auto [override_value, mode] :
       {std::pair{opt.alpha_a, &ctx.channel.a}, std::pair{opt.alpha_b, &ctx.channel.b}}) {
    if (!override_value) continue;
    if (std::abs(*override_value) > 1) throw std::invalid_argument("alpha override must satisfy |alpha| <= 1");
    mode->alpha = *override_value;
  }
  return ctx;
}

QuantumSetup setup_for(const Context& ctx, const CommonOptions& opt) {
  QuantumSetup s;
  s.spin_state = ctx.channel.spin_state();
  s.pa = MeasurementParams<double>(opt.eta_a, ctx.channel.a.alpha);
  s.pb = MeasurementParams<double>(opt.eta_b, ctx.channel.b.alpha);
  if (s.spin_state == SpinState::TripletM0 && (opt.eta_a != 0 || opt.eta_b != 0)) {
    throw std::invalid_argument("chi_c0 channels are defined for unbiased measurements only");
  }
  return s;
}

Json metadata(const std::string& command, const CommonOptions& opt, const Context& ctx) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = opt.seed;
  j["catalog"] = {{"path", ctx.catalog_path}, {"hash", ctx.catalog_hash}};
  j["channel"] = ctx.channel.name();
  j["mother"] = to_string(ctx.channel.mother);
  j["spin_state"] = to_string(ctx.channel.spin_state());
  j["alpha_a"] = ctx.channel.a.alpha;
  j["alpha_b"] = ctx.channel.b.alpha;
  j["eta_a"] = opt.eta_a;
  j["eta_b"] = opt.eta_b;
  return j;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << text;
}

TripleSettings<double> settings_from(const std::string& settings_path, std::optional<double> phi_deg,
                                     double fallback_phi) {
  if (!settings_path.empty()) return load_settings(settings_path);
  return build_settings(phi_deg ? *phi_deg * kDegree : fallback_phi);
}

void add_common(CLI::App* sub, CommonOptions& opt, bool with_eta) {
  sub->add_option("--channel", opt.channel, "Production channel <mother>:<mode>[,<mode>]")
      ->capture_default_str();
  sub->add_option("--catalog", opt.catalog, "Decay-mode catalog (default: $LEGGETT_CATALOG or shipped file)");
  sub->add_option("--alpha-a", opt.alpha_a, "Override the A-side decay parameter");
  sub->add_option("--alpha-b", opt.alpha_b, "Override the B-side decay parameter");
  if (with_eta) {
    sub->add_option("--eta-a", opt.eta_a, "A-side bias")->capture_default_str();
    sub->add_option("--eta-b", opt.eta_b, "B-side bias")->capture_default_str();
  }
  sub->add_option("--seed", opt.seed, "Random seed (echoed into every output)")->capture_default_str();
  sub->add_option("--out", opt.out, "Output file (default: stdout)");
}

int cmd_predict(const CommonOptions& opt, std::optional<double> phi_deg, const std::string& settings_path,
                const std::string& command) {
  const Context ctx = load_context(opt);
  const QuantumSetup setup = setup_for(ctx, opt);
  const double phi_star = optimal_phi(setup.pa.alpha());
  const auto settings = settings_from(settings_path, phi_deg, phi_star);
  const auto report = predict_leggett_sum(setup, settings);

  // Maximum over phi: closed-form optimum plus a dense grid (covers biased inputs).
  double max_lhs = predict_leggett_sum(setup, build_settings(phi_star)).lhs;
  double arg_max = phi_star;
  const auto grid = scan_phi(setup, std::numbers::pi / 10000, std::numbers::pi, 10000);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.lhs[i] > max_lhs) {
      max_lhs = grid.lhs[i];
      arg_max = grid.grid[i][0];
    }
  }

  Json j = metadata(command, opt, ctx);
  j["settings"] = to_json(settings);
  j["report"] = to_json(report);
  j["optimal_phi_rad"] = phi_star;
  j["optimal_phi_deg"] = phi_star / kDegree;
  j["max_lhs"] = max_lhs;
  j["max_lhs_phi_rad"] = arg_max;
  j["max_violated"] = max_lhs > 2;
  j["violation_condition"] = leggett_violation_condition(setup.pa.alpha(), setup.pb.alpha());
  if (opt.eta_b == 0 && settings.arrangement == Arrangement::Difference) {
    const auto flipped = flip_b_prime(settings);
    const auto e = triple_correlations(flipped, [&](const Direction<double>& a, const Direction<double>& b) {
      return setup.correlation(a, b);
    });
    j["difference_form"] = to_json(leggett_diff(flipped, e, setup.pb));
  }
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

// Flattens metadata into "# key=value" CSV lines; tool and version are
// written by write_csv itself.
void echo_into(ScanResult& scan, const Json& meta, const std::string& prefix = "") {
  for (const auto& [key, value] : meta.items()) {
    if (prefix.empty() && (key == "tool" || key == "version")) continue;
    if (value.is_object()) {
      echo_into(scan, value, prefix + key + "_");
      continue;
    }
    scan.echo.emplace_back(prefix + key, value.is_string() ? value.get<std::string>() : value.dump());
  }
}

int cmd_scan_phi(const CommonOptions& opt, double lo_deg, double hi_deg, std::size_t steps,
                 const std::string& command) {
  const Context ctx = load_context(opt);
  const QuantumSetup setup = setup_for(ctx, opt);
  auto scan = scan_phi(setup, lo_deg * kDegree, hi_deg * kDegree, steps);
  Json meta = metadata(command, opt, ctx);
  meta["phi_min_deg"] = lo_deg;
  meta["phi_max_deg"] = hi_deg;
  meta["steps"] = steps;
  echo_into(scan, meta);
  std::ostringstream out;
  write_csv(out, scan);
  emit(opt.out, out.str());
  return 0;
}

int cmd_scan_region(const CommonOptions& opt, double lo, double hi, std::size_t steps,
                    const std::string& command) {
  auto scan = scan_region(lo, hi, steps);
  Json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["command"] = command;
  meta["seed"] = opt.seed;
  // The region is catalog independent; the catalog is still identified when
  // one is available so every output carries a hash.
  const std::string path = opt.catalog.empty() ? default_catalog_path().string() : opt.catalog;
  std::string hash = "-";
  try {
    hash = catalog_hash_hex(load_catalog(path));
  } catch (const CatalogError&) {
    if (!opt.catalog.empty()) throw;
  }
  meta["catalog"] = {{"path", path}, {"hash", hash}};
  meta["min"] = lo;
  meta["max"] = hi;
  meta["steps"] = steps;
  meta["boundary"] = "(alpha_a^2 + 1/9) alpha_b^2 = 1";
  echo_into(scan, meta);
  std::ostringstream out;
  write_csv(out, scan);
  emit(opt.out, out.str());
  return 0;
}

int cmd_simulate(const CommonOptions& opt, std::size_t events, std::optional<double> phi_deg,
                 const std::string& settings_path, double sigma_threshold, unsigned threads,
                 const std::string& command) {
  if (events < kMinEstimatorEvents) {
    throw std::invalid_argument("simulate: --events must be at least " +
                                std::to_string(kMinEstimatorEvents));
  }
  const Context ctx = load_context(opt);
  const QuantumSetup setup = QuantumSetup::from_channel(ctx.channel);
  const auto settings = settings_from(settings_path, phi_deg, optimal_phi(setup.pa.alpha()));
  const auto sample = sample_pair_decay(ctx.channel, events, opt.seed, threads, ctx.catalog_hash);
  const auto est = estimate_leggett_lhs(sample, settings, ctx.channel.b.alpha);
  const auto closed = predict_leggett_sum(setup, settings);

  const double significance = est.std_error > 0 ? (est.lhs_hat - 2) / est.std_error : 0;
  const bool observed = significance >= sigma_threshold;

  Json j = metadata(command, opt, ctx);
  j["rng"] = sample.rng_algorithm;
  j["events"] = sample.n_events();
  j["settings"] = to_json(settings);
  Json corr = Json::array();
  for (int i = 0; i < 3; ++i) {
    corr.push_back({{"pair", i + 1},
                    {"e_b_hat", est.correlations.e_b[i]},
                    {"e_bp_hat", est.correlations.e_b_prime[i]}});
  }
  j["estimated_correlations"] = corr;
  j["lhs_hat"] = est.lhs_hat;
  j["std_error"] = est.std_error;
  j["error_method"] = est.error_method;
  j["closed_form_lhs"] = closed.lhs;
  j["bound"] = 2;
  j["significance_sigma"] = significance;
  j["sigma_threshold"] = sigma_threshold;
  j["violation_observed"] = observed;

  if (!opt.out.empty() && opt.out != "-") {
    const std::string events_path = opt.out + ".events";
    write_event_file(events_path, sample);
    j["event_file"] = events_path;
    emit(opt.out + ".json", j.dump(2) + "\n");
  } else {
    emit("", j.dump(2) + "\n");
  }
  return observed ? 0 : 2;
}

int cmd_check(const CheckOptions& options) {
  const auto results = run_checks(options);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.identity << "  residual=" << r.residual
              << "  tolerance=" << r.tolerance << '\n';
    all = all && r.passed;
  }
  std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? 0 : 3;
}

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Bell and Leggett inequalities for entangled hyperon decays"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  const std::string command = join_argv(argc, argv);

  CommonOptions common;
  std::optional<double> phi_deg;
  std::string settings_path;

  auto* predict = app.add_subcommand("predict", "Closed-form Leggett prediction for a channel");
  add_common(predict, common, true);
  predict->add_option("--phi-deg", phi_deg, "Opening angle of each (b, b') pair in degrees (default: optimum)");
  predict->add_option("--settings", settings_path, "Triple-settings file (overrides --phi-deg)");

  double phi_min_deg = 0.1;
  double phi_max_deg = 180;
  std::size_t phi_steps = 1800;
  auto* scan_phi_cmd = app.add_subcommand("scan-phi", "Leggett LHS over phi as CSV");
  add_common(scan_phi_cmd, common, true);
  scan_phi_cmd->add_option("--phi-min-deg", phi_min_deg, "First opening angle in degrees")->capture_default_str();
  scan_phi_cmd->add_option("--phi-max-deg", phi_max_deg, "Last opening angle in degrees")->capture_default_str();
  scan_phi_cmd->add_option("--steps", phi_steps, "Grid points, endpoints included")->capture_default_str();

  double region_min = 0;
  double region_max = 1;
  std::size_t region_steps = 101;
  auto* scan_region_cmd = app.add_subcommand("scan-region", "Violation region over (alpha_a, alpha_b) as CSV");
  scan_region_cmd->add_option("--min", region_min, "Lower |alpha| on both axes")->capture_default_str();
  scan_region_cmd->add_option("--max", region_max, "Upper |alpha| on both axes")->capture_default_str();
  scan_region_cmd->add_option("--steps", region_steps, "Grid points per axis")->capture_default_str();
  scan_region_cmd->add_option("--seed", common.seed, "Seed (echoed only; the region is deterministic)")->capture_default_str();
  scan_region_cmd->add_option("--out", common.out, "Output file (default: stdout)");

  std::size_t events = 1000000;
  double sigma_threshold = 3;
  unsigned threads = 1;
  auto* simulate = app.add_subcommand("simulate", "Generate decay events and estimate the Leggett LHS");
  add_common(simulate, common, false);
  simulate->add_option("--events", events, "Number of decay pairs")->capture_default_str();
  simulate->add_option("--phi-deg", phi_deg, "Opening angle in degrees (default: optimum)");
  simulate->add_option("--settings", settings_path, "Triple-settings file (overrides --phi-deg)");
  simulate->add_option("--sigma-threshold", sigma_threshold, "Significance for a reported violation")
      ->capture_default_str();
  simulate->add_option("--threads", threads, "Worker threads; output does not depend on this")->capture_default_str();

  CheckOptions check_options;
  auto* check = app.add_subcommand("check", "Cross-check closed forms, sampler and threshold against oracles");
  check->add_option("--seed", check_options.seed, "Seed for random inputs")->capture_default_str();
  check->add_flag("--inject-sign-flip", check_options.inject_singlet_sign_flip,
                  "Negative control: negate the closed-form singlet correlation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*predict) return cmd_predict(common, phi_deg, settings_path, command);
    if (*scan_phi_cmd) return cmd_scan_phi(common, phi_min_deg, phi_max_deg, phi_steps, command);
    if (*scan_region_cmd) return cmd_scan_region(common, region_min, region_max, region_steps, command);
    if (*simulate) {
      return cmd_simulate(common, events, phi_deg, settings_path, sigma_threshold, threads, command);
    }
    if (*check) return cmd_check(check_options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
