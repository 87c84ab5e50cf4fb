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

#include "rainbound/linalg.hpp"

namespace rainbound {

enum class Polarization { horizontal, vertical };

// per_subcarrier evaluates the P.838-3 regression at every f_k;
// band_average forces the same (k, alpha) pair at every subcarrier.
enum class CoefficientMode { per_subcarrier, band_average };

// anchored: L_eff = L_0 sin(theta_base) / sin(theta_el).
// p618: L_eff = L_s * r_eff with the P.618 reduction factor.
enum class PathMode { anchored, p618 };

struct P838Coefficients {
  double k = 0.0;
  double alpha = 0.0;
};

// ITU-R P.838-3 power-law coefficients, f in [1, 100] GHz.
P838Coefficients p838_coefficients(double f_ghz, Polarization pol);

class FrequencyGrid {
 public:
  FrequencyGrid(std::vector<double> frequencies_ghz, Polarization pol = Polarization::horizontal);

  // K points evenly spaced on [lo, hi]; K = 1 gives the band centre.
  static FrequencyGrid uniform(double lo_ghz, double hi_ghz, std::size_t count,
                               Polarization pol = Polarization::horizontal);

  const std::vector<double>& frequencies() const noexcept { return freqs_; }
  std::size_t size() const noexcept { return freqs_.size(); }
  double operator[](std::size_t i) const { return freqs_[i]; }
  Polarization polarization() const noexcept { return pol_; }

 private:
  std::vector<double> freqs_;
  Polarization pol_;
};

// Per-subcarrier (k, alpha) pairs aligned with a FrequencyGrid.
struct CoefficientTable {
  std::vector<double> k;
  std::vector<double> alpha;
  CoefficientMode mode = CoefficientMode::per_subcarrier;

  std::size_t size() const noexcept { return k.size(); }
  P838Coefficients at(std::size_t i) const { return {k[i], alpha[i]}; }
  // Arithmetic means over the table.
  P838Coefficients mean() const;
};

CoefficientTable make_coefficients(const FrequencyGrid& grid, CoefficientMode mode,
                                   P838Coefficients band = {0.022, 1.19});

// Reads `f_GHz,k,alpha` rows ('#' comments and blank lines skipped) and
// interpolates linearly in f onto the grid. Grid points outside the file's
// frequency span are a ConfigError.
CoefficientTable load_coefficient_file(const std::string& path, const FrequencyGrid& grid);

struct AtmosphericState {
  double rain_rate = 0.0;    // mm/h
  double water_vapor = 0.0;  // g/m^3
  double cloud_lwc = 0.0;    // g/m^3
  double offset = 0.0;       // dB

  void validate() const;
};

struct PathGeometry {
  double elevation_deg = 38.0;
  double rain_height_km = 3.1;
  double gas_path_km = 10.0;
  double cloud_path_km = 2.0;
  double base_elevation_deg = 38.0;
  double base_rain_path_km = 3.0;
  PathMode mode = PathMode::anchored;

  void validate() const;
  PathGeometry at_elevation(double elevation) const;
};

// gamma_R = k R^alpha, dB/km.
double specific_rain_attenuation(P838Coefficients c, double rain_rate);
double specific_rain_attenuation(double f_ghz, double rain_rate, Polarization pol = Polarization::horizontal);

double slant_path(const PathGeometry& geom);
double p618_reduction_factor(const PathGeometry& geom, double gamma_r, double f_ghz);
double p618_effective_path(const PathGeometry& geom, double gamma_r, double f_ghz);
double anchored_effective_path(const PathGeometry& geom);
// Dispatches on geom.mode.
double effective_path(const PathGeometry& geom, double gamma_r, double f_ghz);

// Simplified gaseous absorption: oxygen low-frequency term plus a single
// 22.235 GHz water-vapour line with a flat continuum. Valid for f in [1, 50] GHz.
double gas_specific_attenuation(double f_ghz, double water_vapor);
double gas_specific_attenuation_dwv(double f_ghz, double water_vapor);

// Rayleigh cloud coefficient from a single-Debye water permittivity at 0 C,
// (dB/km)/(g/m^3).
double cloud_coefficient(double f_ghz);

struct AttenuationTerms {
  double rain = 0.0;
  double gas = 0.0;
  double cloud = 0.0;
  double offset = 0.0;
  double total() const noexcept { return rain + gas + cloud + offset; }
};

AttenuationTerms attenuation_terms(double f_ghz, P838Coefficients c, const AtmosphericState& state,
                                   const PathGeometry& geom);
double total_attenuation(double f_ghz, P838Coefficients c, const AtmosphericState& state,
                         const PathGeometry& geom);
std::vector<double> attenuation_vector(const AtmosphericState& state, const FrequencyGrid& grid,
                                       const CoefficientTable& coefs, const PathGeometry& geom);

// Column order of the sensitivity matrix follows theta = [R, rho_wv, M_c, G].
enum ParameterBit : unsigned {
  param_rain = 1u,
  param_water_vapor = 2u,
  param_cloud = 4u,
  param_offset = 8u,
  param_all = 15u,
};

std::vector<std::size_t> mask_indices(unsigned mask);
std::string mask_label(unsigned mask);

// dA_rain/dR at one subcarrier, including the path-length derivative in p618 mode.
double rain_gradient(double f_ghz, P838Coefficients c, double rain_rate, const PathGeometry& geom);

linalg::Matrix sensitivity_matrix(const AtmosphericState& state, const FrequencyGrid& grid,
                                  const CoefficientTable& coefs, const PathGeometry& geom, unsigned mask);

}  // namespace rainbound
