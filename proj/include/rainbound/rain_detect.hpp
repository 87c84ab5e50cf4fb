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
#include <optional>
#include <span>
#include <vector>

#include "rainbound/itu_atmos.hpp"

namespace rainbound {

// mu_d = k R_d^alpha L_eff, dB.
double design_mean(double design_rate, P838Coefficients band, double path_km);

struct CusumConfig {
  double design_rate = 5.0;
  double sigma_n = 1.0;
  double p_fa = 1e-3;
  P838Coefficients band{0.022, 1.19};
  double path_km = 3.0;
  // Derived by make_cusum_config.
  double mu_d = 0.0;
  double h = 0.0;

  double mean_attenuation(double rain_rate) const;
  double drift(double rain_rate) const { return mean_attenuation(rain_rate) - 0.5 * mu_d; }
};

CusumConfig make_cusum_config(double design_rate, P838Coefficients band, double path_km, double sigma_n,
                              double p_fa);

struct CusumState {
  double s = 0.0;
  bool alarmed = false;
  std::optional<std::size_t> alarm_time;
  std::size_t t = 0;  // samples consumed
};

CusumState cusum_update(CusumState state, double attenuation_db, const CusumConfig& cfg);

// Wald delay h / (mu_R - mu_d/2), minutes. Throws UndetectableError when the
// drift is not positive.
double add_wald(double rain_rate, const CusumConfig& cfg);

// 1 - exp(-T / ADD); 0 when the drift is not positive.
double detection_probability(double rain_rate, double window_min, const CusumConfig& cfg);

// exp(h mu_d / sigma^2) = 1 / P_FA.
double arl0_wald(const CusumConfig& cfg);
// Siegmund's corrected run length under clear sky, increments N(-mu_d/2, sigma^2).
double arl0_siegmund(const CusumConfig& cfg);

struct SeriesDetection {
  std::optional<std::size_t> alarm_index;  // 0-based sample index of the first crossing
  std::vector<double> trajectory;
};

SeriesDetection run_series(std::span<const double> attenuation_db, const CusumConfig& cfg);

}  // namespace rainbound
