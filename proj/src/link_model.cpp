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

#include "rainbound/link_model.hpp"

#include <cmath>

#include "rainbound/errors.hpp"
#include "rainbound/link_rate.hpp"

namespace rainbound {

void LinkConfig::validate() const {
  if (!(f_lo_ghz >= 1.0 && f_hi_ghz <= 100.0 && f_lo_ghz <= f_hi_ghz)) throw ConfigError("band edges must satisfy 1 <= f_lo <= f_hi <= 100 GHz");
  if (subcarriers == 0) throw ConfigError("subcarriers must be >= 1");
  if (subcarriers > 1 && !(f_lo_ghz < f_hi_ghz)) throw ConfigError("band must have positive width for K > 1");
  if (!(band.k > 0.0) || !(band.alpha > 0.5 && band.alpha < 2.0)) throw ConfigError("band k must be > 0 and alpha in (0.5, 2)");
  if (!(n_sym >= 2.0)) throw ConfigError("n_sym must be >= 2");
  if (!(pilot_fraction > 0.0 && pilot_fraction < 1.0)) throw ConfigError("pilot fraction must lie in (0, 1)");
  if (!(pilot_fraction * n_sym >= 1.0)) throw ConfigError("pilot fraction leaves no pilot symbols");
  if (!(sigma_n_db > 0.0)) throw ConfigError("sigma_n must be > 0");
  if (!(sigma_sys_db >= 0.0)) throw ConfigError("sigma_sys must be >= 0");
  if (!(bandwidth_mhz > 0.0)) throw ConfigError("bandwidth must be > 0");
  if (!std::isfinite(snr0_db)) throw ConfigError("snr0 must be finite");
  if (!(water_vapor >= 0.0) || !(cloud_lwc >= 0.0) || !std::isfinite(offset_db)) throw ConfigError("invalid nuisance state");
  try {
    geometry.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

double LinkConfig::snr0() const { return db_to_linear(snr0_db); }

std::size_t LinkConfig::pilot_symbols() const {
  return static_cast<std::size_t>(std::max(1.0, std::round(pilot_fraction * n_sym)));
}

namespace {

CoefficientTable build_coefficients(const LinkConfig& cfg, const FrequencyGrid& grid) {
  if (!cfg.coefficient_file.empty() && cfg.coefficient_mode == CoefficientMode::per_subcarrier)
    return load_coefficient_file(cfg.coefficient_file, grid);
  return make_coefficients(grid, cfg.coefficient_mode, cfg.band);
}

}  // namespace

LinkModel::LinkModel(LinkConfig config)
    : cfg_((config.validate(), std::move(config))),
      grid_(FrequencyGrid::uniform(cfg_.f_lo_ghz, cfg_.f_hi_ghz, cfg_.subcarriers, cfg_.polarization)),
      coefs_(build_coefficients(cfg_, grid_)) {}

P838Coefficients LinkModel::band_stats() const {
  return coefs_.mode == CoefficientMode::band_average ? cfg_.band : coefs_.mean();
}

P838Coefficients LinkModel::centre_stats() const {
  if (coefs_.mode == CoefficientMode::band_average) return cfg_.band;
  return p838_coefficients(0.5 * (cfg_.f_lo_ghz + cfg_.f_hi_ghz), cfg_.polarization);
}

AtmosphericState LinkModel::state(double rain_rate) const {
  return {rain_rate, cfg_.water_vapor, cfg_.cloud_lwc, cfg_.offset_db};
}

double LinkModel::rain_path() const { return anchored_effective_path(cfg_.geometry); }

std::vector<double> LinkModel::attenuation(double rain_rate) const {
  return attenuation_vector(state(rain_rate), grid_, coefs_, cfg_.geometry);
}

std::vector<double> LinkModel::nuisance_attenuation() const { return attenuation(0.0); }

std::vector<double> LinkModel::rain_gradient(double rain_rate) const {
  std::vector<double> g(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i)
    g[i] = rainbound::rain_gradient(grid_[i], coefs_.at(i), rain_rate, cfg_.geometry);
  return g;
}

double LinkModel::mean_rain_attenuation(double rain_rate) const {
  double s = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    s += attenuation_terms(grid_[i], coefs_.at(i), {rain_rate, 0.0, 0.0, 0.0}, cfg_.geometry).rain;
  return s / static_cast<double>(grid_.size());
}

double LinkModel::data_information(double rain_rate, double sigma_n) const {
  return rain_information(rain_gradient(rain_rate), sigma_n);
}

double LinkModel::sigma_n(double eta, double mean_snr) const {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("pilot fraction must lie in (0, 1)");
  if (cfg_.pilot_noise == PilotNoiseMode::scaled)
    return cfg_.sigma_n_db * std::sqrt(cfg_.pilot_fraction / eta);
  return std::sqrt(pilot_noise_variance(db_noise_constant(), eta * cfg_.n_sym, mean_snr, cfg_.sigma_sys_db));
}

LinkModel LinkModel::with_elevation(double elevation_deg) const {
  LinkConfig c = cfg_;
  c.geometry.elevation_deg = elevation_deg;
  return LinkModel(std::move(c));
}

}  // namespace rainbound
