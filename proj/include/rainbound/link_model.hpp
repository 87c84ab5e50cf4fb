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
#include <string>
#include <vector>

#include "rainbound/fisher_bounds.hpp"
#include "rainbound/itu_atmos.hpp"

namespace rainbound {

// How the dB-domain noise responds to the pilot fraction.
// scaled: sigma_n^2(eta) = sigma_ref^2 * eta_ref / eta, anchored at the
//         configured sigma_n and pilot fraction.
// eq8:    sigma_n^2 = c0 / (eta N_sym) (1 + 1/gamma_bar)^2 + sigma_sys^2.
enum class PilotNoiseMode { scaled, eq8 };

struct LinkConfig {
  double f_lo_ghz = 10.7;
  double f_hi_ghz = 12.7;
  std::size_t subcarriers = 5;
  Polarization polarization = Polarization::horizontal;
  CoefficientMode coefficient_mode = CoefficientMode::per_subcarrier;
  P838Coefficients band{0.022, 1.19};
  std::string coefficient_file;

  PathGeometry geometry;

  double snr0_db = 10.0;
  double n_sym = 302.0;
  double pilot_fraction = 0.1;
  double bandwidth_mhz = 240.0;
  double sigma_n_db = 1.0;
  double sigma_sys_db = 0.63;
  PilotNoiseMode pilot_noise = PilotNoiseMode::scaled;

  // Known nuisance state (side information).
  double water_vapor = 7.5;
  double cloud_lwc = 0.0;
  double offset_db = 0.0;

  void validate() const;
  double snr0() const;
  double pilot_count() const { return pilot_fraction * n_sym; }
  // Integer pilot count for places that need a physical symbol count.
  std::size_t pilot_symbols() const;
};

class LinkModel {
 public:
  explicit LinkModel(LinkConfig config);

  const LinkConfig& config() const noexcept { return cfg_; }
  const FrequencyGrid& grid() const noexcept { return grid_; }
  const CoefficientTable& coefficients() const noexcept { return coefs_; }
  std::size_t subcarriers() const noexcept { return grid_.size(); }

  // (k, alpha) used for scalar summaries: band pair in band-average mode,
  // grid means otherwise.
  P838Coefficients band_stats() const;
  // Coefficients at the band centre frequency.
  P838Coefficients centre_stats() const;

  AtmosphericState state(double rain_rate) const;
  double rain_path() const;

  std::vector<double> attenuation(double rain_rate) const;
  // Known non-rain part c_k of each subcarrier's attenuation.
  std::vector<double> nuisance_attenuation() const;
  std::vector<double> rain_gradient(double rain_rate) const;
  // Band-mean rain attenuation on the configured path, dB.
  double mean_rain_attenuation(double rain_rate) const;

  double data_information(double rain_rate, double sigma_n) const;
  double data_information(double rain_rate) const { return data_information(rain_rate, cfg_.sigma_n_db); }

  // Noise standard deviation at pilot fraction eta and mean SNR gamma_bar.
  double sigma_n(double eta, double mean_snr) const;

  LinkModel with_elevation(double elevation_deg) const;

 private:
  LinkConfig cfg_;
  FrequencyGrid grid_;
  CoefficientTable coefs_;
};

}  // namespace rainbound
