// Copyright 2026 The rainbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rainbound/rainbound.h"

namespace {

enum Exit { exit_ok = 0, exit_usage = 1, exit_config = 2, exit_numeric = 3, exit_io = 4 };

int exit_code(rb_status s) {
  switch (s) {
    case RB_OK: return exit_ok;
    case RB_ERR_CONFIG:
    case RB_ERR_PARSE: return exit_config;
    case RB_ERR_IO: return exit_io;
    case RB_ERR_ARGUMENT: return exit_usage;
    default: return exit_numeric;
  }
}

struct Options {
  std::string config;
  std::string out;
  std::string series;
  std::uint64_t seed = 0;
  bool band_average = false;
  bool full_p838 = false;
  std::string noise_mode;
  std::vector<std::string> set;
};

int report(rb_context* ctx, rb_status s, const char* step) {
  std::fprintf(stderr, "rainbound: %s: %s: %s\n", step, rb_status_string(s), rb_last_error(ctx));
  return exit_code(s);
}

int configure(rb_context* ctx, const Options& o, const CLI::App& sub) {
  rb_status s = RB_OK;
  if (!o.config.empty() && (s = rb_load_config(ctx, o.config.c_str())) != RB_OK) return report(ctx, s, "config");
  for (const auto& kv : o.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "rainbound: --set expects section.key=value, got '%s'\n", kv.c_str());
      return exit_usage;
    }
    s = rb_set_option(ctx, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (s != RB_OK) return report(ctx, s == RB_ERR_ARGUMENT ? RB_ERR_CONFIG : s, "--set");
  }
  if (const auto* seed = sub.get_option_no_throw("--seed"); seed && seed->count() && (s = rb_set_seed(ctx, o.seed)) != RB_OK) return report(ctx, s, "--seed");
  if (o.band_average) s = rb_set_coefficient_mode(ctx, RB_COEF_BAND_AVERAGE);
  if (o.full_p838) s = rb_set_coefficient_mode(ctx, RB_COEF_FULL_P838);
  if (s != RB_OK) return report(ctx, s, "coefficient mode");
  if (!o.noise_mode.empty()) {
    s = rb_set_noise_mode(ctx, o.noise_mode == "chi2" ? RB_NOISE_CHI2 : RB_NOISE_DB);
    if (s != RB_OK) return report(ctx, s, "--noise-mode");
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rain-rate sensing bounds, allocation and detection for Ku-band satellite links"};
  app.set_version_flag("--version", std::string(rb_version()));
  app.require_subcommand(1);

  Options o;
  const char* commands[] = {"bounds", "geometry", "alloc", "detect", "estimate", "mc", "print-config"};
  const char* about[] = {"CRB/BCRB curves, R_min table, side-information table, Pareto frontier",
                         "R_min versus elevation, optimal elevation locus",
                         "adaptive pilot allocation sweep and regime thresholds",
                         "CUSUM delay theory vs Monte Carlo, optional series run",
                         "MLE/MAP efficiency, optional series run",
                         "multi-link scaling, prior score, fusion and noise checks",
                         "print the effective configuration"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], about[i]);
    sub->add_option("--config,-c", o.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", o.set, "override one option, section.key=value");
    auto* band = sub->add_flag("--band-average", o.band_average, "use the band-average k, alpha pair");
    auto* full = sub->add_flag("--full-p838", o.full_p838, "per-subcarrier P.838 coefficients");
    band->excludes(full);
    if (std::string(commands[i]) != "print-config") {
      sub->add_option("--out,-o", o.out, "output directory (default: experiment.out_dir)");
      sub->add_option("--seed", o.seed, "RNG seed");
      sub->add_option("--noise-mode", o.noise_mode, "db | chi2")->check(CLI::IsMember({"db", "chi2"}));
      sub->add_option("--series", o.series, "timestamp,attenuation_db series for detect/estimate");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  rb_context* ctx = nullptr;
  if (rb_context_create(&ctx) != RB_OK) {
    std::fprintf(stderr, "rainbound: cannot allocate context\n");
    return exit_numeric;
  }
  int rc = exit_ok;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    rc = configure(ctx, o, *subs[i]);
    if (rc != exit_ok) break;
    const std::string cmd = commands[i];
    if (cmd == "print-config") {
      size_t needed = 0;
      rb_config_text(ctx, nullptr, 0, &needed);
      std::string text(needed, '\0');
      const rb_status s = rb_config_text(ctx, text.data(), text.size(), &needed);
      if (s != RB_OK) {
        rc = report(ctx, s, "print-config");
        break;
      }
      std::fputs(text.c_str(), stdout);
      break;
    }
    std::string out = o.out;
    if (out.empty()) {
      char buf[4096];
      size_t needed = 0;
      const rb_status g = rb_get_option(ctx, "experiment.out_dir", buf, sizeof buf, &needed);
      if (g != RB_OK) {
        rc = report(ctx, g, "experiment.out_dir");
        break;
      }
      out = buf;
    }
    const rb_status s = rb_run(ctx, cmd.c_str(), out.c_str(), o.series.empty() ? nullptr : o.series.c_str());
    if (s != RB_OK) rc = report(ctx, s, cmd.c_str());
    else std::printf("%s: wrote %s\n", cmd.c_str(), out.c_str());
    break;
  }
  rb_context_destroy(ctx);
  return rc;
}
