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

#include <span>
#include <vector>

#include "rainbound/itu_atmos.hpp"
#include "rainbound/link_model.hpp"

namespace rainbound {

inline constexpr double p618_floor_deg = 15.0;
inline constexpr double terminal_floor_deg = 20.0;

double leff_of_elevation(double elevation_deg, const PathGeometry& geom);
double snr_of_elevation(double elevation_deg, double snr0, double base_elevation_deg);

enum class NoiseProfile { realistic, constant };

// Loss terms that degrade the SNR in the realistic profile.
struct ElevationLosses {
  bool gas = true;   // band-mean clear-air absorption along the anchored path
  bool rain = true;  // band-mean rain attenuation at the rate being evaluated
};

// sigma_n^2(theta, R) for the realistic profile: the pilot-noise model at the
// elevation-scaled SNR, normalized so that sigma_n equals the configured value
// at the base elevation in clear sky.
double elevation_noise_variance(const LinkModel& model, double elevation_deg, double rain_rate,
                                ElevationLosses losses);

// CRB variance of R at a given elevation and rain rate.
double elevation_crb(const LinkModel& model, double elevation_deg, double rain_rate, NoiseProfile profile,
                     ElevationLosses losses);

double rmin_of_elevation(const LinkModel& model, double elevation_deg, NoiseProfile profile,
                         ElevationLosses losses = {});

struct ClosedFormOptimum {
  double x_star = 0.0;
  double beta_star = 0.0;
  double elevation_deg = 0.0;
  bool saturated = false;  // beta*/gamma0 would put the optimum above zenith
};

ClosedFormOptimum sensing_optimal_elevation_closed(double pilot_count, double sigma_sys, double c0, double snr0,
                                                   double base_elevation_deg);

// Golden-section minimizer of realistic R_min over [lo, hi].
double sensing_optimal_elevation_numeric(const LinkModel& model, ElevationLosses losses, double lo = 5.0,
                                         double hi = 90.0, double tol = 0.05);

struct ElevationRow {
  double elevation_deg = 0.0;
  double leff_km = 0.0;
  double snr_db = 0.0;
  double rmin_realistic = 0.0;  // NaN when no rate reaches unit relative error
  double rmin_constant = 0.0;
  bool p618_extrapolation = false;
};

std::vector<ElevationRow> elevation_sweep(const LinkModel& model, std::span<const double> elevations,
                                          ElevationLosses losses = {});

struct LocusPoint {
  double rain_rate = 0.0;
  double sensing_deg = 0.0;
  double comm_deg = 0.0;
  double gap_deg() const { return comm_deg - sensing_deg; }
};

std::vector<LocusPoint> optimal_locus(const LinkModel& model, std::span<const double> rain_rates,
                                      ElevationLosses losses = {}, double floor_deg = p618_floor_deg);

}  // namespace rainbound
