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

#include "rainbound/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "rainbound/errors.hpp"
#include "rainbound/text.hpp"

namespace rainbound {

namespace {

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::llround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) out.push_back(lo + step * i);
  return out;
}

struct Field {
  const char* section;
  const char* key;
  const char* comment;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError(std::string(key) + ": '" + std::string(value) + "' is not " + std::string(expected));
}

double to_double(std::string_view key, std::string_view v) {
  const auto d = text::parse_double(v);
  if (!d) bad_value(key, v, "a number");
  return *d;
}

long long to_int(std::string_view key, std::string_view v) {
  const auto i = text::parse_int(v);
  if (!i) bad_value(key, v, "an integer");
  return *i;
}

std::size_t to_count(std::string_view key, std::string_view v) {
  const long long i = to_int(key, v);
  if (i < 0) bad_value(key, v, "a non-negative integer");
  return static_cast<std::size_t>(i);
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  const std::string t = text::trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad_value(key, v, "an unsigned 64-bit integer");
  return out;
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  if (text::trim(v).empty()) return out;
  for (const auto& item : text::split(v, ',')) out.push_back(to_double(key, item));
  return out;
}

std::vector<int> to_int_list(std::string_view key, std::string_view v) {
  std::vector<int> out;
  if (text::trim(v).empty()) return out;
  for (const auto& item : text::split(v, ',')) {
    const long long i = to_int(key, item);
    if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) bad_value(key, item, "an int");
    out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

template <class Access>
Field num(const char* s, const char* k, const char* c, Access a) {
  return {s, k, c, [a](const RunConfig& r) { return text::format_double(a(const_cast<RunConfig&>(r))); },
          [a, k](RunConfig& r, std::string_view v) { a(r) = to_double(k, v); }};
}

template <class Access>
Field count(const char* s, const char* k, const char* c, Access a) {
  return {s, k, c, [a](const RunConfig& r) { return std::to_string(a(const_cast<RunConfig&>(r))); },
          [a, k](RunConfig& r, std::string_view v) { a(r) = to_count(k, v); }};
}

template <class Access>
Field list(const char* s, const char* k, const char* c, Access a) {
  return {s, k, c, [a](const RunConfig& r) { return text::join(a(const_cast<RunConfig&>(r)), ", "); },
          [a, k](RunConfig& r, std::string_view v) { a(r) = to_list(k, v); }};
}

Field word(const char* s, const char* k, const char* c, std::function<std::string(const RunConfig&)> get,
           std::function<void(RunConfig&, const std::string&)> set) {
  return {s, k, c, std::move(get), [set](RunConfig& r, std::string_view v) { set(r, text::lower(text::trim(v))); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    // [band]
    f.push_back(num("band", "f_lo_ghz", "lower band edge, GHz", [](RunConfig& r) -> double& { return r.link.f_lo_ghz; }));
    f.push_back(num("band", "f_hi_ghz", "upper band edge, GHz", [](RunConfig& r) -> double& { return r.link.f_hi_ghz; }));
    f.push_back(count("band", "subcarriers", "K, frequency samples across the band",
                      [](RunConfig& r) -> std::size_t& { return r.link.subcarriers; }));
    f.push_back(word(
        "band", "polarization", "horizontal | vertical",
        [](const RunConfig& r) {
          return std::string(r.link.polarization == Polarization::horizontal ? "horizontal" : "vertical");
        },
        [](RunConfig& r, const std::string& v) {
          if (v == "horizontal") r.link.polarization = Polarization::horizontal;
          else if (v == "vertical") r.link.polarization = Polarization::vertical;
          else bad_value("polarization", v, "horizontal or vertical");
        }));
    f.push_back(word(
        "band", "coefficient_mode", "full-p838 (per subcarrier) | band-average (k, alpha below)",
        [](const RunConfig& r) {
          return std::string(r.link.coefficient_mode == CoefficientMode::per_subcarrier ? "full-p838" : "band-average");
        },
        [](RunConfig& r, const std::string& v) {
          if (v == "full-p838") r.link.coefficient_mode = CoefficientMode::per_subcarrier;
          else if (v == "band-average") r.link.coefficient_mode = CoefficientMode::band_average;
          else bad_value("coefficient_mode", v, "full-p838 or band-average");
        }));
    f.push_back(num("band", "k", "band-average P.838 k, dB/km/(mm/h)^alpha",
                    [](RunConfig& r) -> double& { return r.link.band.k; }));
    f.push_back(num("band", "alpha", "band-average P.838 alpha", [](RunConfig& r) -> double& { return r.link.band.alpha; }));
    f.push_back({"band", "coefficient_file", "optional f_ghz,k,alpha table overriding P.838",
                 [](const RunConfig& r) { return r.link.coefficient_file; },
                 [](RunConfig& r, std::string_view v) { r.link.coefficient_file = text::trim(v); }});
    // [geometry]
    f.push_back(num("geometry", "elevation_deg", "elevation angle, deg",
                    [](RunConfig& r) -> double& { return r.link.geometry.elevation_deg; }));
    f.push_back(num("geometry", "rain_height_km", "rain height h_R, km",
                    [](RunConfig& r) -> double& { return r.link.geometry.rain_height_km; }));
    f.push_back(num("geometry", "rain_path_km", "effective rain path L_eff at the base elevation, km",
                    [](RunConfig& r) -> double& { return r.link.geometry.base_rain_path_km; }));
    f.push_back(num("geometry", "base_elevation_deg", "elevation at which rain_path_km applies, deg",
                    [](RunConfig& r) -> double& { return r.link.geometry.base_elevation_deg; }));
    f.push_back(num("geometry", "gas_path_km", "equivalent gas path, km",
                    [](RunConfig& r) -> double& { return r.link.geometry.gas_path_km; }));
    f.push_back(num("geometry", "cloud_path_km", "equivalent cloud path, km",
                    [](RunConfig& r) -> double& { return r.link.geometry.cloud_path_km; }));
    f.push_back(word(
        "geometry", "path_mode", "anchored (L_eff fixed) | p618 (reduction factor)",
        [](const RunConfig& r) { return std::string(r.link.geometry.mode == PathMode::anchored ? "anchored" : "p618"); },
        [](RunConfig& r, const std::string& v) {
          if (v == "anchored") r.link.geometry.mode = PathMode::anchored;
          else if (v == "p618") r.link.geometry.mode = PathMode::p618;
          else bad_value("path_mode", v, "anchored or p618");
        }));
    // [link]
    f.push_back(num("link", "snr0_db", "clear-sky SNR gamma_0, dB", [](RunConfig& r) -> double& { return r.link.snr0_db; }));
    f.push_back(num("link", "n_sym", "OFDM symbols per frame", [](RunConfig& r) -> double& { return r.link.n_sym; }));
    f.push_back(num("link", "pilot_fraction", "pilot fraction eta", [](RunConfig& r) -> double& { return r.link.pilot_fraction; }));
    f.push_back(num("link", "bandwidth_mhz", "occupied bandwidth, MHz",
                    [](RunConfig& r) -> double& { return r.link.bandwidth_mhz; }));
    f.push_back(num("link", "sigma_n_db", "attenuation noise std sigma_n, dB",
                    [](RunConfig& r) -> double& { return r.link.sigma_n_db; }));
    f.push_back(num("link", "sigma_sys_db", "systematic noise floor sigma_sys, dB",
                    [](RunConfig& r) -> double& { return r.link.sigma_sys_db; }));
    f.push_back(word(
        "link", "pilot_noise", "scaled (sigma_n^2 ~ 1/eta) | eq8 (pilot estimator variance)",
        [](const RunConfig& r) { return std::string(r.link.pilot_noise == PilotNoiseMode::scaled ? "scaled" : "eq8"); },
        [](RunConfig& r, const std::string& v) {
          if (v == "scaled") r.link.pilot_noise = PilotNoiseMode::scaled;
          else if (v == "eq8") r.link.pilot_noise = PilotNoiseMode::eq8;
          else bad_value("pilot_noise", v, "scaled or eq8");
        }));
    // [nuisance]
    f.push_back(num("nuisance", "water_vapor", "surface water vapour density, g/m^3",
                    [](RunConfig& r) -> double& { return r.link.water_vapor; }));
    f.push_back(num("nuisance", "cloud_lwc", "cloud liquid water, kg/m^2", [](RunConfig& r) -> double& { return r.link.cloud_lwc; }));
    f.push_back(num("nuisance", "offset_db", "hardware offset G, dB", [](RunConfig& r) -> double& { return r.link.offset_db; }));
    // [prior]
    f.push_back(num("prior", "mean_rate", "climatological mean rain rate, mm/h",
                    [](RunConfig& r) -> double& { return r.prior.mean_rate; }));
    f.push_back(num("prior", "cv", "coefficient of variation", [](RunConfig& r) -> double& { return r.prior.cv; }));
    f.push_back(num("prior", "rho", "lag-1 correlation of ln R per minute", [](RunConfig& r) -> double& { return r.prior.rho; }));
    // [policy]
    f.push_back(num("policy", "c_min", "rate floor, bit/s/Hz", [](RunConfig& r) -> double& { return r.policy.c_min; }));
    f.push_back(num("policy", "eta_min", "smallest pilot fraction", [](RunConfig& r) -> double& { return r.policy.eta_min; }));
    f.push_back(num("policy", "eta_max", "largest pilot fraction", [](RunConfig& r) -> double& { return r.policy.eta_max; }));
    f.push_back(num("policy", "epsilon", "bisection tolerance on eta", [](RunConfig& r) -> double& { return r.policy.epsilon; }));
    f.push_back(num("policy", "rate_tolerance", "slack on the rate floor, bit/s/Hz",
                    [](RunConfig& r) -> double& { return r.policy.rate_tolerance; }));
    f.push_back(num("policy", "baseline_db", "fixed non-rain loss in the allocator SNR, dB",
                    [](RunConfig& r) -> double& { return r.policy.baseline_db; }));
    // [detect]
    f.push_back(num("detect", "design_rate", "CUSUM design rain rate R_d, mm/h",
                    [](RunConfig& r) -> double& { return r.detect.design_rate; }));
    f.push_back(num("detect", "p_fa", "false-alarm probability per ARL window", [](RunConfig& r) -> double& { return r.detect.p_fa; }));
    f.push_back(count("detect", "arl_runs", "clear-sky runs for the ARL0 estimate",
                      [](RunConfig& r) -> std::size_t& { return r.detect.arl_runs; }));
    f.push_back(count("detect", "max_steps", "censoring horizon per delay trial, min",
                      [](RunConfig& r) -> std::size_t& { return r.detect.max_steps; }));
    // [experiment]
    f.push_back({"experiment", "seed", "RNG seed", [](const RunConfig& r) { return std::to_string(r.experiment.rng.seed); },
                 [](RunConfig& r, std::string_view v) { r.experiment.rng.seed = to_u64("seed", v); }});
    f.push_back({"experiment", "stream", "RNG stream id",
                 [](const RunConfig& r) { return std::to_string(r.experiment.rng.stream); },
                 [](RunConfig& r, std::string_view v) { r.experiment.rng.stream = to_u64("stream", v); }});
    f.push_back(word(
        "experiment", "noise_mode", "db | chi2",
        [](const RunConfig& r) { return std::string(noise_mode_name(r.experiment.noise_mode)); },
        [](RunConfig& r, const std::string& v) {
          if (v == "db") r.experiment.noise_mode = NoiseMode::db_gaussian;
          else if (v == "chi2") r.experiment.noise_mode = NoiseMode::chi_squared_pilot;
          else bad_value("noise_mode", v, "db or chi2");
        }));
    f.push_back(count("experiment", "estimator_trials", "Monte Carlo trials per rain rate",
                      [](RunConfig& r) -> std::size_t& { return r.experiment.estimator_trials; }));
    f.push_back(count("experiment", "cusum_trials", "Monte Carlo trials per rain rate",
                      [](RunConfig& r) -> std::size_t& { return r.experiment.cusum_trials; }));
    f.push_back(count("experiment", "score_draws", "draws for the prior score check",
                      [](RunConfig& r) -> std::size_t& { return r.experiment.score_draws; }));
    f.push_back(count("experiment", "fusion_links", "links in the fusion check",
                      [](RunConfig& r) -> std::size_t& { return r.experiment.fusion_links; }));
    f.push_back(count("experiment", "fusion_trials", "trials in the fusion check",
                      [](RunConfig& r) -> std::size_t& { return r.experiment.fusion_trials; }));
    f.push_back({"experiment", "window", "pooling window T, min", [](const RunConfig& r) { return std::to_string(r.experiment.window); },
                 [](RunConfig& r, std::string_view v) {
                   const long long w = to_int("window", v);
                   if (w < 1 || w > 100000) bad_value("window", v, "a window in [1, 100000]");
                   r.experiment.window = static_cast<int>(w);
                 }});
    f.push_back({"experiment", "out_dir", "output directory", [](const RunConfig& r) { return r.experiment.out_dir; },
                 [](RunConfig& r, std::string_view v) { r.experiment.out_dir = text::trim(v); }});
    // [sweep]
    f.push_back(list("sweep", "rain_rates", "mm/h", [](RunConfig& r) -> std::vector<double>& { return r.sweep.rain_rates; }));
    f.push_back({"sweep", "windows", "BCRB windows, min", [](const RunConfig& r) { return join_ints(r.sweep.windows); },
                 [](RunConfig& r, std::string_view v) { r.sweep.windows = to_int_list("windows", v); }});
    f.push_back(num("sweep", "reference_rate", "rate for RMSE and side-information tables, mm/h",
                    [](RunConfig& r) -> double& { return r.sweep.reference_rate; }));
    f.push_back(count("sweep", "sideinfo_subcarriers", "K for the side-information table",
                      [](RunConfig& r) -> std::size_t& { return r.sweep.sideinfo_subcarriers; }));
    f.push_back(list("sweep", "pareto_etas", "pilot fractions", [](RunConfig& r) -> std::vector<double>& { return r.sweep.pareto_etas; }));
    f.push_back(list("sweep", "elevations", "deg", [](RunConfig& r) -> std::vector<double>& { return r.sweep.elevations; }));
    f.push_back(list("sweep", "locus_rates", "mm/h", [](RunConfig& r) -> std::vector<double>& { return r.sweep.locus_rates; }));
    f.push_back(list("sweep", "c_mins", "bit/s/Hz", [](RunConfig& r) -> std::vector<double>& { return r.sweep.c_mins; }));
    f.push_back(list("sweep", "fixed_etas", "fixed allocation baselines",
                     [](RunConfig& r) -> std::vector<double>& { return r.sweep.fixed_etas; }));
    f.push_back(list("sweep", "alloc_rates", "mm/h", [](RunConfig& r) -> std::vector<double>& { return r.sweep.alloc_rates; }));
    f.push_back(list("sweep", "detect_rates", "mm/h", [](RunConfig& r) -> std::vector<double>& { return r.sweep.detect_rates; }));
    f.push_back(list("sweep", "detect_windows", "detection windows, min",
                     [](RunConfig& r) -> std::vector<double>& { return r.sweep.detect_windows; }));
    f.push_back(list("sweep", "estimate_rates", "mm/h", [](RunConfig& r) -> std::vector<double>& { return r.sweep.estimate_rates; }));
    f.push_back(list("sweep", "link_counts", "links N", [](RunConfig& r) -> std::vector<double>& { return r.sweep.link_counts; }));
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view section, std::string_view key) {
  for (const auto& f : fields())
    if (section == f.section && key == f.key) return &f;
  return nullptr;
}

void require_positive(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw ConfigError(std::string(name) + " must not be empty");
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + " entries must be finite and > 0");
}

}  // namespace

RunConfig::RunConfig() {
  sweep.rain_rates = {0.1, 0.2, 0.5, 1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 70, 100};
  sweep.pareto_etas = {0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  sweep.elevations = range(5.0, 90.0, 2.5);
  sweep.locus_rates = {1, 3, 5, 10, 15, 20, 25, 30, 40, 50};
  sweep.alloc_rates = range(0.0, 100.0, 5.0);
  sweep.alloc_rates.front() = 1.0;
}

void RunConfig::validate() const {
  link.validate();
  try {
    prior.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  policy.validate();
  if (!(detect.design_rate > 0.0)) throw ConfigError("design_rate must be > 0");
  if (!(detect.p_fa > 0.0 && detect.p_fa < 1.0)) throw ConfigError("p_fa must lie in (0, 1)");
  if (detect.arl_runs == 0 || detect.max_steps == 0) throw ConfigError("arl_runs and max_steps must be >= 1");
  if (experiment.estimator_trials == 0 || experiment.cusum_trials == 0) throw ConfigError("trial counts must be >= 1");
  if (experiment.score_draws < 2) throw ConfigError("score_draws must be >= 2");
  if (experiment.fusion_links == 0 || experiment.fusion_trials == 0) throw ConfigError("fusion sizes must be >= 1");
  if (experiment.window < 1) throw ConfigError("window must be >= 1");
  require_positive(sweep.rain_rates, "rain_rates");
  if (sweep.windows.empty()) throw ConfigError("windows must not be empty");
  for (int w : sweep.windows)
    if (w < 1) throw ConfigError("windows entries must be >= 1");
  if (!(sweep.reference_rate > 0.0)) throw ConfigError("reference_rate must be > 0");
  if (sweep.sideinfo_subcarriers < 2) throw ConfigError("sideinfo_subcarriers must be >= 2");
  require_positive(sweep.pareto_etas, "pareto_etas");
  for (double e : sweep.pareto_etas)
    if (!(e < 1.0)) throw ConfigError("pareto_etas entries must be < 1");
  require_positive(sweep.elevations, "elevations");
  for (double e : sweep.elevations)
    if (e < 5.0 || e > 90.0) throw ConfigError("elevations must lie in [5, 90] deg");
  require_positive(sweep.locus_rates, "locus_rates");
  require_positive(sweep.c_mins, "c_mins");
  require_positive(sweep.fixed_etas, "fixed_etas");
  for (double e : sweep.fixed_etas)
    if (!(e < 1.0)) throw ConfigError("fixed_etas entries must be < 1");
  require_positive(sweep.alloc_rates, "alloc_rates");
  require_positive(sweep.detect_rates, "detect_rates");
  require_positive(sweep.detect_windows, "detect_windows");
  require_positive(sweep.estimate_rates, "estimate_rates");
  require_positive(sweep.link_counts, "link_counts");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = text::trim(text::strip_comment(text.substr(start, end - start)));
    ++line_no;
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = text::lower(text::trim(std::string_view(line).substr(1, line.size() - 2)));
      bool known = false;
      for (const auto& f : fields()) known = known || section == f.section;
      if (!known) throw ParseError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    if (section.empty()) throw ParseError(line_no, "key outside of a section");
    const std::string key = text::lower(text::trim(std::string_view(line).substr(0, eq)));
    const Field* f = find_field(section, key);
    if (!f) throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
    try {
      f->set(cfg, std::string_view(line).substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += std::string(f.key) + " = " + f.get(cfg) + "  # " + f.comment + "\n";
  }
  return out;
}

void set_option(RunConfig& cfg, std::string_view dotted_key, std::string_view value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string_view::npos) throw ConfigError("option key must be section.key: " + std::string(dotted_key));
  const Field* f = find_field(dotted_key.substr(0, dot), dotted_key.substr(dot + 1));
  if (!f) throw ConfigError("unknown option " + std::string(dotted_key));
  f->set(cfg, value);
}

std::string get_option(const RunConfig& cfg, std::string_view dotted_key) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string_view::npos) throw ConfigError("option key must be section.key: " + std::string(dotted_key));
  const Field* f = find_field(dotted_key.substr(0, dot), dotted_key.substr(dot + 1));
  if (!f) throw ConfigError("unknown option " + std::string(dotted_key));
  return f->get(cfg);
}

std::vector<std::string> option_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(std::string(f.section) + "." + f.key);
  return keys;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(serialize_config(cfg))));
  return buf;
}

}  // namespace rainbound
