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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rainbound/fisher_bounds.hpp"
#include "rainbound/link_model.hpp"
#include "rainbound/rain_detect.hpp"

namespace rainbound {

struct RngSpec {
  std::uint64_t seed = 20240601;
  std::uint64_t stream = 0;
};

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Independent engine per (seed, stream, trial); trials can run in any order.
Engine make_engine(RngSpec spec, std::uint64_t trial = 0);

enum class NoiseMode { db_gaussian, chi_squared_pilot };
const char* noise_mode_name(NoiseMode m);

// One snapshot of K attenuation observations at rain rate R.
// db_gaussian adds N(0, sigma_n^2) per subcarrier. chi_squared_pilot averages
// N_p exponential pilot powers at the per-subcarrier SNR, removes the noise
// floor, converts against the clear-sky reference, and adds N(0, sigma_sys^2).
std::vector<double> gen_observation(const LinkModel& model, double rain_rate, NoiseMode mode, double sigma_n,
                                    Engine& rng);

// Gauss-Markov log rain series with stationary start.
std::vector<double> gen_rain_series(const RainPrior& prior, std::size_t length, Engine& rng);

struct EfficiencyRow {
  double rain_rate = 0.0;
  double mle_rmse = 0.0;
  double mle_bias = 0.0;
  double map_rmse = 0.0;
  double crb_rmse = 0.0;
  double bcrb_rmse = 0.0;
  double median_iterations = 0.0;
  std::size_t failures = 0;
  double mle_ratio() const { return mle_rmse / crb_rmse; }
  double map_ratio() const { return map_rmse / bcrb_rmse; }
};

std::vector<EfficiencyRow> estimator_efficiency_experiment(const LinkModel& model, const RainPrior& prior,
                                                           std::span<const double> rain_rates, double sigma_n,
                                                           NoiseMode mode, std::size_t trials, RngSpec rng);

struct DelayRow {
  double rain_rate = 0.0;
  double wald_add = 0.0;  // NaN when undetectable
  double mc_add = 0.0;
  double ratio = 0.0;
  std::vector<double> pd_mc;
  std::vector<double> pd_analytic;
  std::size_t censored = 0;  // trials with no alarm within max_steps
};

// Constant-R step at t = 0; scalar observations N(mu_R, sigma_n^2).
std::vector<DelayRow> cusum_delay_experiment(const CusumConfig& cfg, std::span<const double> rain_rates,
                                             std::span<const double> windows, std::size_t trials, RngSpec rng,
                                             std::size_t max_steps = 100000);

// Mean run length to false alarm under clear sky, censored at max_steps.
double arl0_experiment(const CusumConfig& cfg, std::size_t runs, RngSpec rng, std::size_t max_steps = 1000000);

struct ScalingRow {
  double links = 0.0;
  double rmse = 0.0;
};

std::vector<ScalingRow> multilink_scaling_experiment(const LinkModel& model, const RainPrior& prior,
                                                     std::span<const double> link_counts, double rain_rate,
                                                     int window);

// Least-squares slope of log rmse against log N.
double loglog_slope(std::span<const ScalingRow> rows);

enum class ScoreSampling { plain, tilted };

struct ScoreEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean of the squared log-normal score. plain draws R from the prior; its
// relative standard error at 1e6 draws is about 2.4% because of the
// exp(-2 ln R) tail. tilted draws ln R from N(mu - 2 sigma^2, sigma^2) and
// reweights by the density ratio, which removes that tail.
ScoreEstimate prior_score_experiment(const RainPrior& prior, std::size_t draws, RngSpec rng,
                                     ScoreSampling sampling = ScoreSampling::tilted);

struct FusionResult {
  double fused_rmse = 0.0;
  double predicted_rmse = 0.0;  // 1 / sqrt(sum J_D)
};

// N equal-geometry links, one MLE per link, FIM-weighted fusion.
FusionResult fusion_experiment(const LinkModel& model, double rain_rate, std::size_t links, std::size_t trials,
                               RngSpec rng);

struct SeriesStats {
  double mean = 0.0;
  double cv = 0.0;
  double lag1_log = 0.0;
};

SeriesStats rain_series_stats(std::span<const double> series);

struct NoiseStats {
  double mean_error = 0.0;
  double std_error = 0.0;
};

NoiseStats observation_noise_experiment(const LinkModel& model, double rain_rate, NoiseMode mode, double sigma_n,
                                        std::size_t draws, RngSpec rng);

}  // namespace rainbound
