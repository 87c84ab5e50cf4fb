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

#include "rainbound/commands.hpp"

#include <algorithm>
#include <cmath>
#include <system_error>

#include <json.hpp>

#include "rainbound/csv.hpp"
#include "rainbound/errors.hpp"
#include "rainbound/fisher_bounds.hpp"
#include "rainbound/link_rate.hpp"
#include "rainbound/montecarlo.hpp"
#include "rainbound/pilot_alloc.hpp"
#include "rainbound/rain_detect.hpp"
#include "rainbound/rain_estimate.hpp"
#include "rainbound/series_io.hpp"
#include "rainbound/slant_geometry.hpp"
#include "rainbound/text.hpp"

#ifndef RAINBOUND_VERSION
#define RAINBOUND_VERSION "0.0.0"
#endif

namespace rainbound {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int manifest_format = 1;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) {}

  void csv(const std::string& name, const CsvTable& table) {
    table.write(dir_ / name);
    files_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) {
    write_text(dir_ / name, j.dump(2) + "\n");
    files_.push_back(name);
  }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

// "bcrb_T10_mm_h", "pd_mc_5min".
std::string tagged(const std::string& prefix, double tag, const std::string& suffix) {
  return prefix + text::format_double(tag) + suffix;
}

void cmd_bounds(const RunConfig& cfg, Output& out) {
  const LinkModel model(cfg.link);
  const double jp = prior_fisher_info(cfg.prior);
  const double sigma = cfg.link.sigma_n_db;
  const auto& windows = cfg.sweep.windows;

  std::vector<std::string> head{"R_mm_h", "crb_rmse_mm_h"};
  for (int w : windows) head.push_back(tagged("bcrb_T", w, "_mm_h"));
  CsvTable crb(head);
  for (double r : cfg.sweep.rain_rates) {
    const double jd = model.data_information(r, sigma);
    crb.row().add(r).add(1.0 / std::sqrt(jd));
    for (int w : windows) crb.add(bcrb(jd, jp, temporal_gain(cfg.prior.rho, w)).rmse);
  }
  out.csv("crb_vs_R.csv", crb);

  const double rref = cfg.sweep.reference_rate;
  CsvTable rmin({"bound", "window_min", "rmin_mm_h", tagged("rmse_at_", rref, "_mm_h")});
  {
    const double v = rmin_solve([&](double r) { return 1.0 / model.data_information(r, sigma); });
    rmin.row().add("crb").add(0).add(v).add(1.0 / std::sqrt(model.data_information(rref, sigma)));
  }
  for (int w : windows) {
    const double gt = temporal_gain(cfg.prior.rho, w);
    const double v = rmin_solve([&](double r) { return bcrb(model.data_information(r, sigma), jp, gt).variance; });
    rmin.row().add("bcrb").add(w).add(v).add(bcrb(model.data_information(rref, sigma), jp, gt).rmse);
  }
  out.csv("rmin_table.csv", rmin);

  LinkConfig dense = cfg.link;
  dense.subcarriers = cfg.sweep.sideinfo_subcarriers;
  const LinkModel side(dense);
  CsvTable sideinfo({"unknowns", "parameters", "relative_crb", "excess_pct", "kappa", "identifiability"});
  for (const auto& row : identifiability_table(side.state(rref), side.grid(), side.coefficients(),
                                               dense.geometry, sigma)) {
    sideinfo.row()
        .add(mask_indices(row.mask).size())
        .add(mask_label(row.mask))
        .add(row.relative_crb)
        .add(100.0 * row.excess)
        .add(row.kappa)
        .add(row.identifiable ? identifiability_label(row.kappa) : "unidentifiable");
  }
  out.csv("sideinfo_table.csv", sideinfo);

  CsvTable pareto({"eta", "pilot_symbols", "spectral_efficiency_bit_s_hz", "sigma_n_db", "crb_rmse_mm_h",
                   tagged("bcrb_T", cfg.experiment.window, "_mm_h")});
  for (const auto& p : pareto_frontier(model, rref, cfg.prior, cfg.experiment.window, cfg.sweep.pareto_etas))
    pareto.row().add(p.eta).add(p.eta * cfg.link.n_sym).add(p.spectral_efficiency).add(p.sigma_n).add(p.crb_rmse).add(p.bcrb_rmse);
  out.csv("pareto.csv", pareto);

  const auto sens = sensitivity_matrix(side.state(rref), side.grid(), side.coefficients(), dense.geometry,
                                       param_rain | param_water_vapor);
  const auto g_rain = sens.column(0);
  const auto g_wv = sens.column(1);
  const P838Coefficients bs = model.band_stats();
  json summary;
  summary["prior_information_mm2_h2"] = jp;
  summary["temporal_gain_limit"] = temporal_gain_limit(cfg.prior.rho);
  summary["t95_exact_min"] = t95_exact(cfg.prior.rho);
  summary["t95_window_min"] = t95_window(cfg.prior.rho);
  summary["rmin_closed_form_mm_h"] = rmin_closed_form(sigma, model.subcarriers(), bs, model.rain_path());
  summary["wideband_gain_ratio"] = wideband_gain_ratio(model.coefficients(), rref);
  summary["coherence_rain_water_vapor"] = gradient_coherence(g_rain, g_wv);
  summary["coefficient_mode"] =
      cfg.link.coefficient_mode == CoefficientMode::per_subcarrier ? "full-p838" : "band-average";
  out.json_file("bounds_summary.json", summary);
}

void cmd_geometry(const RunConfig& cfg, Output& out) {
  const LinkModel model(cfg.link);
  CsvTable sweep({"elevation_deg", "leff_km", "snr_db", "rmin_realistic_mm_h", "rmin_constant_mm_h",
                  "p618_extrapolation"});
  for (const auto& r : elevation_sweep(model, cfg.sweep.elevations))
    sweep.row().add(r.elevation_deg).add(r.leff_km).add(r.snr_db).add(r.rmin_realistic).add(r.rmin_constant).add(r.p618_extrapolation);
  out.csv("rmin_vs_elevation.csv", sweep);

  CsvTable locus({"R_mm_h", "theta_sens_deg", "theta_comm_deg", "gap_deg"});
  for (const auto& p : optimal_locus(model, cfg.sweep.locus_rates))
    locus.row().add(p.rain_rate).add(p.sensing_deg).add(p.comm_deg).add(p.gap_deg());
  out.csv("optimal_locus.csv", locus);

  const auto closed = sensing_optimal_elevation_closed(static_cast<double>(cfg.link.pilot_symbols()), cfg.link.sigma_sys_db,
                                                       db_noise_constant(), cfg.link.snr0(),
                                                       cfg.link.geometry.base_elevation_deg);
  json j;
  j["closed_form"] = {{"x_star", closed.x_star},
                      {"beta_star", closed.beta_star},
                      {"elevation_deg", closed.elevation_deg},
                      {"saturated", closed.saturated}};
  j["numeric_lossless_deg"] = sensing_optimal_elevation_numeric(model, {false, false});
  j["numeric_realistic_deg"] = sensing_optimal_elevation_numeric(model, {});
  const double base = cfg.link.geometry.elevation_deg;
  const double r_base = rmin_of_elevation(model, base, NoiseProfile::realistic);
  json floors = json::array();
  for (double el : {p618_floor_deg, terminal_floor_deg}) {
    const double r = rmin_of_elevation(model, el, NoiseProfile::realistic);
    floors.push_back({{"elevation_deg", el}, {"rmin_mm_h", r}, {"base_over_floor", r_base / r}});
  }
  j["base_elevation_deg"] = base;
  j["rmin_base_mm_h"] = r_base;
  j["floors"] = floors;
  out.json_file("elevation_optimum.json", j);
}

void cmd_alloc(const RunConfig& cfg, Output& out) {
  const LinkModel model(cfg.link);
  const int window = cfg.experiment.window;
  const auto rows = allocation_sweep(model, cfg.sweep.alloc_rates, cfg.sweep.c_mins, cfg.policy, cfg.prior, window,
                                     cfg.sweep.fixed_etas);
  CsvTable table({"R_mm_h", "c_min_bit_s_hz", "eta_star", "regime", "achieved_c_bit_s_hz", "bcrb_rmse_mm_h",
                  "mean_snr_db", "iterations", "improvement_vs_best_fixed"});
  CsvTable base({"R_mm_h", "c_min_bit_s_hz", "eta", "bcrb_rmse_mm_h", "achieved_c_bit_s_hz", "feasible"});
  for (const auto& r : rows) {
    table.row()
        .add(r.rain_rate)
        .add(r.c_min)
        .add(r.adaptive.eta_star)
        .add(regime_name(r.adaptive.regime))
        .add(r.adaptive.achieved_c)
        .add(r.adaptive.bound_rmse)
        .add(linear_to_db(r.adaptive.mean_snr))
        .add(r.adaptive.iterations)
        .add(r.improvement);
    for (const auto& b : r.baselines)
      base.row().add(r.rain_rate).add(r.c_min).add(b.eta).add(b.bound_rmse).add(b.achieved_c).add(b.feasible);
  }
  out.csv("allocation.csv", table);
  out.csv("allocation_baselines.csv", base);

  json thresholds = json::array();
  for (double c : cfg.sweep.c_mins) {
    AllocationPolicy p = cfg.policy;
    p.c_min = c;
    const auto t = regime_thresholds(model, p);
    thresholds.push_back({{"c_min_bit_s_hz", c}, {"r_sat_mm_h", number(t.r_sat)}, {"r_out_mm_h", number(t.r_out)}});
  }
  json j;
  j["window_min"] = window;
  j["bisection_iterations"] = cfg.policy.bisection_iterations();
  j["throughput_eta_closed_form"] = throughput_optimal_eta(cfg.link.snr0(), cfg.link.n_sym);
  j["throughput_eta_argmax"] = spectral_efficiency_argmax(cfg.link.n_sym, cfg.link.snr0());
  j["regime_thresholds"] = thresholds;
  out.json_file("regimes.json", j);
}

CusumConfig cusum_from(const RunConfig& cfg, const LinkModel& model) {
  return make_cusum_config(cfg.detect.design_rate, cfg.link.band, model.rain_path(), cfg.link.sigma_n_db,
                           cfg.detect.p_fa);
}

json gaps_json(const AttenuationSeries& s) {
  json g = json::array();
  for (const auto& gap : s.gaps) g.push_back({{"before_index", gap.before_index}, {"missing_minutes", gap.missing_minutes}});
  return g;
}

void cmd_detect(const RunConfig& cfg, const CommandRun& run, Output& out) {
  const LinkModel model(cfg.link);
  const CusumConfig cc = cusum_from(cfg, model);
  const auto& windows = cfg.sweep.detect_windows;
  const auto rows = cusum_delay_experiment(cc, cfg.sweep.detect_rates, windows, cfg.experiment.cusum_trials,
                                           cfg.experiment.rng, cfg.detect.max_steps);
  std::vector<std::string> head{"R_mm_h", "wald_add_min", "mc_add_min", "mc_over_wald", "censored"};
  for (double w : windows) head.push_back(tagged("pd_mc_", w, "min"));
  for (double w : windows) head.push_back(tagged("pd_analytic_", w, "min"));
  CsvTable table(head);
  for (const auto& r : rows) {
    table.row().add(r.rain_rate).add(r.wald_add).add(r.mc_add).add(r.ratio).add(r.censored);
    for (double p : r.pd_mc) table.add(p);
    for (double p : r.pd_analytic) table.add(p);
  }
  out.csv("cusum_delay.csv", table);

  RngSpec arl_rng = cfg.experiment.rng;
  arl_rng.stream += 1;
  json j;
  j["design_rate_mm_h"] = cc.design_rate;
  j["mu_d_db"] = cc.mu_d;
  j["threshold_db2"] = cc.h;
  j["sigma_n_db"] = cc.sigma_n;
  j["p_fa"] = cc.p_fa;
  j["arl0_wald_min"] = arl0_wald(cc);
  j["arl0_siegmund_min"] = arl0_siegmund(cc);
  j["arl0_mc_min"] = arl0_experiment(cc, cfg.detect.arl_runs, arl_rng);

  if (!run.series_path.empty()) {
    const AttenuationSeries s = ingest_series(run.series_path);
    const SeriesDetection det = run_series(s.attenuation_db, cc);
    CsvTable traj({"index", "timestamp_iso8601", "attenuation_db", "cusum_db2", "alarm"});
    for (std::size_t i = 0; i < s.size(); ++i)
      traj.row().add(i).add(s.timestamps[i]).add(s.attenuation_db[i]).add(det.trajectory[i]).add(det.alarm_index && *det.alarm_index == i);
    out.csv("cusum_series.csv", traj);
    json sj;
    sj["samples"] = s.size();
    sj["alarm_index"] = det.alarm_index ? json(*det.alarm_index) : json(nullptr);
    sj["alarm_timestamp"] = det.alarm_index ? json(s.timestamps[*det.alarm_index]) : json(nullptr);
    sj["gaps"] = gaps_json(s);
    j["series"] = sj;
  }
  out.json_file("cusum_summary.json", j);
}

void cmd_estimate(const RunConfig& cfg, const CommandRun& run, Output& out) {
  const LinkModel model(cfg.link);
  const double sigma = cfg.link.sigma_n_db;
  const auto rows = estimator_efficiency_experiment(model, cfg.prior, cfg.sweep.estimate_rates, sigma,
                                                    cfg.experiment.noise_mode, cfg.experiment.estimator_trials,
                                                    cfg.experiment.rng);
  CsvTable table({"R_mm_h", "mle_rmse_mm_h", "mle_bias_mm_h", "map_rmse_mm_h", "crb_rmse_mm_h", "bcrb_T1_mm_h",
                  "mle_over_crb", "map_over_bcrb", "median_iterations", "failures"});
  for (const auto& r : rows)
    table.row()
        .add(r.rain_rate)
        .add(r.mle_rmse)
        .add(r.mle_bias)
        .add(r.map_rmse)
        .add(r.crb_rmse)
        .add(r.bcrb_rmse)
        .add(r.mle_ratio())
        .add(r.map_ratio())
        .add(r.median_iterations)
        .add(r.failures);
  out.csv("efficiency.csv", table);

  if (!run.series_path.empty()) {
    // Scalar series: one band-centre observation per minute, clear-sky referenced.
    const AttenuationSeries s = ingest_series(run.series_path);
    const P838Coefficients c = model.centre_stats();
    CsvTable est({"index", "timestamp_iso8601", "attenuation_db", "mle_mm_h", "map_mm_h", "mle_converged",
                  "map_converged"});
    for (std::size_t i = 0; i < s.size(); ++i) {
      EstimationProblem p;
      p.observed = {s.attenuation_db[i]};
      p.k = {c.k};
      p.alpha = {c.alpha};
      p.nuisance = {0.0};
      p.path_km = model.rain_path();
      p.sigma_n = sigma;
      p.centre = c;
      const auto mle = mle_newton(p);
      const auto map = map_newton(p, cfg.prior);
      est.row().add(i).add(s.timestamps[i]).add(s.attenuation_db[i]).add(mle.estimate).add(map.estimate).add(mle.converged).add(map.converged);
    }
    out.csv("estimate_series.csv", est);
    json j;
    j["samples"] = s.size();
    j["gaps"] = gaps_json(s);
    out.json_file("estimate_series.json", j);
  }
}

void cmd_mc(const RunConfig& cfg, Output& out) {
  const LinkModel model(cfg.link);
  const auto& ex = cfg.experiment;
  const double rref = cfg.sweep.reference_rate;
  const auto scaling =
      multilink_scaling_experiment(model, cfg.prior, cfg.sweep.link_counts, rref, ex.window);
  CsvTable table({"links", tagged("bcrb_T", ex.window, "_mm_h")});
  for (const auto& r : scaling) table.row().add(r.links).add(r.rmse);
  out.csv("multilink_scaling.csv", table);

  auto stream = [&](std::uint64_t offset) {
    RngSpec r = ex.rng;
    r.stream += offset;
    return r;
  };
  const auto tilted = prior_score_experiment(cfg.prior, ex.score_draws, stream(0), ScoreSampling::tilted);
  const auto plain = prior_score_experiment(cfg.prior, ex.score_draws, stream(0), ScoreSampling::plain);
  const auto fusion = fusion_experiment(model, rref, ex.fusion_links, ex.fusion_trials, stream(1));
  const auto noise = observation_noise_experiment(model, 0.0, ex.noise_mode, cfg.link.sigma_n_db, 20000, stream(2));

  json j;
  j["reference_rate_mm_h"] = rref;
  // The prior dominates at small N, so the slope is also fitted over N >= 10.
  std::vector<ScalingRow> wide;
  for (const auto& r : scaling)
    if (r.links >= 10.0) wide.push_back(r);
  j["multilink_slope_all"] = scaling.size() >= 2 ? number(loglog_slope(scaling)) : json(nullptr);
  j["multilink_slope_n_ge_10"] = wide.size() >= 2 ? number(loglog_slope(wide)) : json(nullptr);
  j["prior_information_mm2_h2"] = prior_fisher_info(cfg.prior);
  j["prior_score_tilted"] = {{"mean", tilted.mean}, {"std_error", tilted.std_error}};
  j["prior_score_plain"] = {{"mean", plain.mean}, {"std_error", plain.std_error}};
  j["fusion"] = {{"links", ex.fusion_links},
                 {"trials", ex.fusion_trials},
                 {"fused_rmse_mm_h", fusion.fused_rmse},
                 {"predicted_rmse_mm_h", fusion.predicted_rmse}};
  j["clear_sky_noise"] = {{"mode", noise_mode_name(ex.noise_mode)},
                          {"mean_error_db", noise.mean_error},
                          {"std_error_db", noise.std_error}};
  out.json_file("mc_summary.json", j);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"bounds", "geometry", "alloc", "detect", "estimate", "mc"};
  return names;
}

bool is_command(std::string_view name) {
  const auto& n = command_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<std::string> run_command(const RunConfig& cfg, const CommandRun& run) {
  if (!is_command(run.command)) throw ConfigError("unknown command '" + run.command + "'");
  cfg.validate();
  std::error_code ec;
  fs::create_directories(run.out_dir, ec);
  if (ec || !fs::is_directory(run.out_dir)) throw IoError(run.out_dir.string(), "cannot create output directory");

  Output out(run.out_dir);
  if (run.command == "bounds") cmd_bounds(cfg, out);
  else if (run.command == "geometry") cmd_geometry(cfg, out);
  else if (run.command == "alloc") cmd_alloc(cfg, out);
  else if (run.command == "detect") cmd_detect(cfg, run, out);
  else if (run.command == "estimate") cmd_estimate(cfg, run, out);
  else cmd_mc(cfg, out);

  json m;
  m["tool"] = "rainbound";
  m["version"] = RAINBOUND_VERSION;
  m["manifest_format"] = manifest_format;
  m["json_library"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                      "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  m["command"] = run.command;
  m["config_hash_fnv1a64"] = config_hash(cfg);
  m["seed"] = cfg.experiment.rng.seed;
  m["stream"] = cfg.experiment.rng.stream;
  m["coefficient_mode"] =
      cfg.link.coefficient_mode == CoefficientMode::per_subcarrier ? "full-p838" : "band-average";
  m["noise_mode"] = noise_mode_name(cfg.experiment.noise_mode);
  m["series"] = run.series_path.empty() ? json(nullptr) : json(fs::path(run.series_path).filename().string());
  m["files"] = out.files();
  write_text(run.out_dir / "manifest.json", m.dump(2) + "\n");

  auto files = out.files();
  files.push_back("manifest.json");
  return files;
}

}  // namespace rainbound
