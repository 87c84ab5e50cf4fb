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

#include "rainbound/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rainbound/errors.hpp"
#include "rainbound/link_rate.hpp"
#include "rainbound/rain_estimate.hpp"

namespace rainbound {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Engine make_engine(RngSpec spec, std::uint64_t trial) {
  const std::uint64_t s = splitmix64(spec.seed ^ splitmix64(spec.stream ^ splitmix64(trial)));
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(spec.stream), static_cast<std::uint32_t>(trial)};
  return Engine(seq);
}

const char* noise_mode_name(NoiseMode m) { return m == NoiseMode::db_gaussian ? "db" : "chi2"; }

std::vector<double> gen_observation(const LinkModel& model, double rain_rate, NoiseMode mode, double sigma_n,
                                    Engine& rng) {
  std::vector<double> a = model.attenuation(rain_rate);
  std::normal_distribution<double> normal(0.0, 1.0);
  if (mode == NoiseMode::db_gaussian) {
    if (!(sigma_n >= 0.0)) throw DomainError("sigma_n must be >= 0");
    for (double& v : a) v += sigma_n * normal(rng);
    return a;
  }
  const LinkConfig& cfg = model.config();
  const double snr0 = cfg.snr0();
  const double np = static_cast<double>(cfg.pilot_symbols());
  std::gamma_distribution<double> gamma(np, 1.0);
  for (double& v : a) {
    const double snr = snr0 * db_to_linear(-v);
    const double p_hat = (snr + 1.0) * gamma(rng) / np;
    // Floor keeps the dB conversion finite when the noise estimate swamps the signal.
    const double signal = std::max(p_hat - 1.0, 1e-12 * snr0);
    v = linear_to_db(snr0 / signal) + cfg.sigma_sys_db * normal(rng);
  }
  return a;
}

std::vector<double> gen_rain_series(const RainPrior& prior, std::size_t length, Engine& rng) {
  prior.validate();
  if (length == 0) throw DomainError("series length must be >= 1");
  const double mu = prior.mu_ln();
  const double s = prior.sigma_ln();
  const double w = s * std::sqrt(1.0 - prior.rho * prior.rho);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> r(length);
  double x = mu + s * normal(rng);
  r[0] = std::exp(x);
  for (std::size_t t = 1; t < length; ++t) {
    x = prior.rho * x + (1.0 - prior.rho) * mu + w * normal(rng);
    r[t] = std::exp(x);
  }
  return r;
}

namespace {

EstimationProblem make_problem(const LinkModel& model, std::vector<double> observed, double sigma_n) {
  EstimationProblem p;
  p.observed = std::move(observed);
  p.k = model.coefficients().k;
  p.alpha = model.coefficients().alpha;
  p.nuisance = model.nuisance_attenuation();
  p.path_km = model.rain_path();
  p.sigma_n = sigma_n;
  p.centre = model.centre_stats();
  return p;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  return m;
}

}  // namespace

std::vector<EfficiencyRow> estimator_efficiency_experiment(const LinkModel& model, const RainPrior& prior,
                                                           std::span<const double> rain_rates, double sigma_n,
                                                           NoiseMode mode, std::size_t trials, RngSpec rng) {
  if (trials == 0) throw DomainError("trials must be >= 1");
  const double jp = prior_fisher_info(prior);
  std::vector<EfficiencyRow> rows;
  for (std::size_t ri = 0; ri < rain_rates.size(); ++ri) {
    const double r = rain_rates[ri];
    EfficiencyRow row;
    row.rain_rate = r;
    const double jd = model.data_information(r, sigma_n);
    row.crb_rmse = 1.0 / std::sqrt(jd);
    row.bcrb_rmse = bcrb(jd, jp).rmse;
    double se_mle = 0.0;
    double se_map = 0.0;
    double bias = 0.0;
    std::vector<double> iters;
    iters.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      Engine eng = make_engine(rng, ri * trials + t);
      const EstimationProblem p = make_problem(model, gen_observation(model, r, mode, sigma_n, eng), sigma_n);
      const EstimatorReport mle = mle_newton(p);
      const EstimatorReport map = map_newton(p, prior);
      if (!mle.converged) ++row.failures;
      iters.push_back(static_cast<double>(mle.iterations));
      const double e = mle.estimate - r;
      bias += e;
      se_mle += e * e;
      se_map += (map.estimate - r) * (map.estimate - r);
    }
    const double n = static_cast<double>(trials);
    row.mle_rmse = std::sqrt(se_mle / n);
    row.map_rmse = std::sqrt(se_map / n);
    row.mle_bias = bias / n;
    row.median_iterations = median(std::move(iters));
    rows.push_back(row);
  }
  return rows;
}

std::vector<DelayRow> cusum_delay_experiment(const CusumConfig& cfg, std::span<const double> rain_rates,
                                             std::span<const double> windows, std::size_t trials, RngSpec rng,
                                             std::size_t max_steps) {
  if (trials == 0) throw DomainError("trials must be >= 1");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<DelayRow> rows;
  for (std::size_t ri = 0; ri < rain_rates.size(); ++ri) {
    const double r = rain_rates[ri];
    DelayRow row;
    row.rain_rate = r;
    for (double w : windows) row.pd_analytic.push_back(detection_probability(r, w, cfg));
    if (!(cfg.drift(r) > 0.0)) {
      row.wald_add = row.mc_add = row.ratio = nan;
      row.pd_mc.assign(windows.size(), nan);
      rows.push_back(row);
      continue;
    }
    row.wald_add = add_wald(r, cfg);
    const double mu = cfg.mean_attenuation(r) - 0.5 * cfg.mu_d;
    std::vector<std::size_t> hits(windows.size(), 0);
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      Engine eng = make_engine(rng, ri * trials + t);
      std::normal_distribution<double> normal(0.0, 1.0);
      double s = 0.0;
      std::size_t n = 0;
      bool alarm = false;
      while (n < max_steps) {
        ++n;
        s = std::max(0.0, s + mu + cfg.sigma_n * normal(eng));
        if (s > cfg.h) {
          alarm = true;
          break;
        }
      }
      if (!alarm) ++row.censored;
      total += static_cast<double>(n);
      for (std::size_t w = 0; w < windows.size(); ++w)
        if (alarm && static_cast<double>(n) <= windows[w]) ++hits[w];
    }
    row.mc_add = total / static_cast<double>(trials);
    row.ratio = row.mc_add / row.wald_add;
    for (std::size_t h : hits) row.pd_mc.push_back(static_cast<double>(h) / static_cast<double>(trials));
    rows.push_back(row);
  }
  return rows;
}

double arl0_experiment(const CusumConfig& cfg, std::size_t runs, RngSpec rng, std::size_t max_steps) {
  if (runs == 0) throw DomainError("runs must be >= 1");
  double total = 0.0;
  for (std::size_t i = 0; i < runs; ++i) {
    Engine eng = make_engine(rng, i);
    std::normal_distribution<double> normal(0.0, 1.0);
    double s = 0.0;
    std::size_t n = 0;
    while (n < max_steps) {
      ++n;
      s = std::max(0.0, s - 0.5 * cfg.mu_d + cfg.sigma_n * normal(eng));
      if (s > cfg.h) break;
    }
    total += static_cast<double>(n);
  }
  return total / static_cast<double>(runs);
}

std::vector<ScalingRow> multilink_scaling_experiment(const LinkModel& model, const RainPrior& prior,
                                                     std::span<const double> link_counts, double rain_rate,
                                                     int window) {
  const double jd = model.data_information(rain_rate);
  const double jp = prior_fisher_info(prior);
  const double gt = temporal_gain(prior.rho, window);
  std::vector<ScalingRow> rows;
  for (double n : link_counts) {
    if (!(n >= 1.0)) throw DomainError("link counts must be >= 1");
    rows.push_back({n, bcrb(jd, jp, gt, n).rmse});
  }
  return rows;
}

double loglog_slope(std::span<const ScalingRow> rows) {
  if (rows.size() < 2) throw DomainError("slope needs at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    const double x = std::log(r.links);
    const double y = std::log(r.rmse);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScoreEstimate prior_score_experiment(const RainPrior& prior, std::size_t draws, RngSpec rng, ScoreSampling sampling) {
  prior.validate();
  if (draws < 2) throw DomainError("draws must be >= 2");
  const double mu = prior.mu_ln();
  const double s = prior.sigma_ln();
  const double s2 = prior.sigma_ln2();
  const double shift = sampling == ScoreSampling::tilted ? -2.0 * s2 : 0.0;
  Engine eng = make_engine(rng, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  double acc = 0.0;
  double acc2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = mu + shift + s * normal(eng);
    const double score = -std::exp(-x) * (1.0 + (x - mu) / s2);
    const double zp = (x - mu) / s;
    const double zq = (x - mu - shift) / s;
    const double w = std::exp(0.5 * (zq * zq - zp * zp));
    const double v = w * score * score;
    acc += v;
    acc2 += v * v;
  }
  const double n = static_cast<double>(draws);
  const double mean = acc / n;
  const double var = std::max(acc2 / n - mean * mean, 0.0) * n / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

FusionResult fusion_experiment(const LinkModel& model, double rain_rate, std::size_t links, std::size_t trials,
                               RngSpec rng) {
  if (links == 0 || trials == 0) throw DomainError("links and trials must be >= 1");
  const double sigma = model.config().sigma_n_db;
  const double jd = model.data_information(rain_rate, sigma);
  const std::vector<double> weights(links, jd);
  std::vector<double> est(links);
  double se = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t l = 0; l < links; ++l) {
      Engine eng = make_engine(rng, t * links + l);
      const auto obs = gen_observation(model, rain_rate, NoiseMode::db_gaussian, sigma, eng);
      est[l] = mle_newton(make_problem(model, obs, sigma)).estimate;
    }
    const double e = fuse_estimates(est, weights) - rain_rate;
    se += e * e;
  }
  FusionResult r;
  r.fused_rmse = std::sqrt(se / static_cast<double>(trials));
  r.predicted_rmse = 1.0 / std::sqrt(static_cast<double>(links) * jd);
  return r;
}

SeriesStats rain_series_stats(std::span<const double> series) {
  if (series.size() < 2) throw DomainError("series needs at least two samples");
  const double n = static_cast<double>(series.size());
  double m = 0.0;
  for (double v : series) m += v;
  m /= n;
  double var = 0.0;
  for (double v : series) var += (v - m) * (v - m);
  var /= n - 1.0;

  double lm = 0.0;
  for (double v : series) lm += std::log(v);
  lm /= n;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double d = std::log(series[i]) - lm;
    den += d * d;
    if (i + 1 < series.size()) num += d * (std::log(series[i + 1]) - lm);
  }
  return {m, std::sqrt(var) / m, num / den};
}

NoiseStats observation_noise_experiment(const LinkModel& model, double rain_rate, NoiseMode mode, double sigma_n,
                                        std::size_t draws, RngSpec rng) {
  if (draws < 2) throw DomainError("draws must be >= 2");
  const auto truth = model.attenuation(rain_rate);
  double sum = 0.0;
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    Engine eng = make_engine(rng, d);
    const auto obs = gen_observation(model, rain_rate, mode, sigma_n, eng);
    for (std::size_t k = 0; k < obs.size(); ++k) {
      const double e = obs[k] - truth[k];
      sum += e;
      sq += e * e;
      ++count;
    }
  }
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  return {mean, std::sqrt((sq - n * mean * mean) / (n - 1.0))};
}

}  // namespace rainbound
