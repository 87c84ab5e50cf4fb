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

#include "rainbound/rain_detect.hpp"

#include <algorithm>
#include <cmath>

#include "rainbound/errors.hpp"

namespace rainbound {

double design_mean(double design_rate, P838Coefficients band, double path_km) {
  if (!(design_rate >= 0.0)) throw DomainError("design rate must be >= 0");
  if (!(path_km > 0.0)) throw DomainError("path length must be > 0");
  return specific_rain_attenuation(band, design_rate) * path_km;
}

double CusumConfig::mean_attenuation(double rain_rate) const {
  return specific_rain_attenuation(band, rain_rate) * path_km;
}

CusumConfig make_cusum_config(double design_rate, P838Coefficients band, double path_km, double sigma_n,
                              double p_fa) {
  if (!(design_rate > 0.0)) throw DomainError("design rate must be > 0");
  if (!(sigma_n > 0.0)) throw DomainError("sigma_n must be > 0");
  if (!(p_fa > 0.0 && p_fa < 0.5)) throw DomainError("P_FA must lie in (0, 0.5)");
  CusumConfig c;
  c.design_rate = design_rate;
  c.sigma_n = sigma_n;
  c.p_fa = p_fa;
  c.band = band;
  c.path_km = path_km;
  c.mu_d = design_mean(design_rate, band, path_km);
  c.h = sigma_n * sigma_n / c.mu_d * std::log(1.0 / p_fa);
  return c;
}

CusumState cusum_update(CusumState state, double attenuation_db, const CusumConfig& cfg) {
  if (!std::isfinite(attenuation_db)) throw DomainError("attenuation sample must be finite");
  state.s = std::max(0.0, state.s + attenuation_db - 0.5 * cfg.mu_d);
  if (!state.alarmed && state.s > cfg.h) {
    state.alarmed = true;
    state.alarm_time = state.t;
  }
  ++state.t;
  return state;
}

double add_wald(double rain_rate, const CusumConfig& cfg) {
  const double d = cfg.drift(rain_rate);
  if (!(d > 0.0)) throw UndetectableError("CUSUM drift is not positive at this rain rate");
  return cfg.h / d;
}

double detection_probability(double rain_rate, double window_min, const CusumConfig& cfg) {
  if (!(window_min > 0.0)) throw DomainError("detection window must be > 0");
  if (!(cfg.drift(rain_rate) > 0.0)) return 0.0;
  return 1.0 - std::exp(-window_min / add_wald(rain_rate, cfg));
}

double arl0_wald(const CusumConfig& cfg) { return std::exp(cfg.h * cfg.mu_d / (cfg.sigma_n * cfg.sigma_n)); }

double arl0_siegmund(const CusumConfig& cfg) {
  const double delta = 0.5 * cfg.mu_d / cfg.sigma_n;
  const double b = cfg.h / cfg.sigma_n + 1.166;
  const double x = 2.0 * delta * b;
  return (std::exp(x) - x - 1.0) / (2.0 * delta * delta);
}

SeriesDetection run_series(std::span<const double> attenuation_db, const CusumConfig& cfg) {
  SeriesDetection out;
  out.trajectory.reserve(attenuation_db.size());
  CusumState st;
  for (double a : attenuation_db) {
    st = cusum_update(st, a, cfg);
    out.trajectory.push_back(st.s);
  }
  out.alarm_index = st.alarm_time;
  return out;
}

}  // namespace rainbound
