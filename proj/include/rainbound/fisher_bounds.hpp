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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rainbound/itu_atmos.hpp"
#include "rainbound/linalg.hpp"

namespace rainbound {

class LinkModel;

// (10 / ln 10)^2: variance in dB^2 of a unit relative power error.
double db_noise_constant();

// sigma_n^2 = c0 / N_p (1 + 1/gamma)^2 + sigma_sys^2.
double pilot_noise_variance(double c0, double pilot_count, double snr, double sigma_sys);

struct NoiseModel {
  double sigma_sys = 0.63;
  double c0 = db_noise_constant();
  double pilot_count = 30.0;
  double snr = 10.0;
  std::optional<double> fixed_sigma_n;

  void validate() const;
  double variance() const;
  double sigma() const;
};

struct RainPrior {
  double mean_rate = 5.2;  // mm/h
  double cv = 1.05;
  double rho = 0.95;

  void validate() const;
  double sigma_ln2() const;
  double sigma_ln() const;
  double mu_ln() const;
  // Mode of the log-normal density, exp(mu - sigma^2).
  double mode() const;
};

struct BoundResult {
  double data_info = 0.0;
  double prior_info = 0.0;
  double temporal_gain = 1.0;
  double links = 1.0;
  double variance = 0.0;
  double rmse = 0.0;
};

linalg::Matrix fim(const linalg::Matrix& sensitivity, double sigma_n);

// Rain-only Fisher information J_D = sum_k g_k^2 / sigma_n^2.
double rain_information(std::span<const double> rain_gradient, double sigma_n);

double crb_rain_only(const AtmosphericState& state, const FrequencyGrid& grid, const CoefficientTable& coefs,
                     const PathGeometry& geom, double sigma_n);

// Schur-complement CRB of the first parameter. Throws UnidentifiableError when
// the nuisance block is not positive definite.
double crb_joint_schur(const linalg::Matrix& j);

// lambda_max / lambda_min; +inf when lambda_min <= 0.
double condition_number(const linalg::Matrix& j);

double gradient_coherence(std::span<const double> a, std::span<const double> b);

double prior_fisher_info(const RainPrior& prior);

double temporal_gain(double rho, int window);
double temporal_gain_limit(double rho);
// Real-valued T at which G_T = 0.95 G_inf.
double t95_exact(double rho);
int t95_window(double rho);

BoundResult bcrb(double data_info, double prior_info, double temporal_gain = 1.0, double links = 1.0);
double bcrb_crb_ratio(double data_info, double prior_info);

// Smallest root of sqrt(bound(R)) = R on [lo, hi] to |dR| < tol. Throws
// NumericError when the RMSE stays above R over the whole bracket.
double rmin_solve(const std::function<double(double)>& variance_of_rate, double lo = 1e-3, double hi = 1e3,
                  double tol = 1e-6);

double rmin_closed_form(double sigma_n, std::size_t subcarriers, P838Coefficients band, double path_km);

double wideband_gain_ratio(const CoefficientTable& coefs, double rain_rate);

struct ParetoPoint {
  double eta = 0.0;
  double spectral_efficiency = 0.0;
  double sigma_n = 0.0;
  double crb_rmse = 0.0;
  double bcrb_rmse = 0.0;
};

std::vector<ParetoPoint> pareto_frontier(const LinkModel& model, double rain_rate, const RainPrior& prior,
                                         int window, std::span<const double> etas);

struct IdentifiabilityRow {
  unsigned mask = 0;
  double relative_crb = 0.0;  // sqrt(CRB_joint / CRB_rain_only)
  double excess = 0.0;        // CRB_joint / CRB_rain_only - 1
  double kappa = 0.0;
  bool identifiable = false;
};

const char* identifiability_label(double kappa);

// The six parameter subsets, ordered from rain alone to all four unknowns.
std::vector<IdentifiabilityRow> identifiability_table(const AtmosphericState& state, const FrequencyGrid& grid,
                                                      const CoefficientTable& coefs, const PathGeometry& geom,
                                                      double sigma_n);

}  // namespace rainbound
