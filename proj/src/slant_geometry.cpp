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

#include "rainbound/slant_geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rainbound/errors.hpp"
#include "rainbound/link_rate.hpp"
#include "rainbound/optimize.hpp"

namespace rainbound {

namespace {

constexpr double deg = std::numbers::pi / 180.0;

void check_elevation(double el) {
  if (!(el >= 5.0 && el <= 90.0)) throw DomainError("elevation must lie in [5, 90] deg");
}

double clear_air_base(const LinkModel& model) {
  const auto& g = model.grid();
  double s = 0.0;
  for (double f : g.frequencies()) s += gas_specific_attenuation(f, model.config().water_vapor);
  return s / static_cast<double>(g.size()) * model.config().geometry.gas_path_km;
}

double path_loss_db(const LinkModel& model, double elevation_deg, double rain_rate, ElevationLosses losses) {
  const PathGeometry& geom = model.config().geometry;
  const double scale = std::sin(geom.base_elevation_deg * deg) / std::sin(elevation_deg * deg);
  double a = 0.0;
  if (losses.gas) a += clear_air_base(model) * scale;
  if (losses.rain && rain_rate > 0.0) {
    const double l = leff_of_elevation(elevation_deg, geom);
    const auto& c = model.coefficients();
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c.k[i] * std::pow(rain_rate, c.alpha[i]) * l;
    a += s / static_cast<double>(c.size());
  }
  return a;
}

// First sign change of sqrt(var(R)) - R on a log grid, refined by bisection.
// The realistic profile turns back up at extreme rain (SNR collapse), so the
// plain bracket [1e-3, 1e3] can hold two roots.
double first_unit_crossing(const std::function<double(double)>& variance) {
  const auto f = [&](double r) { return std::sqrt(variance(r)) - r; };
  const int n = 240;
  double lo = 1e-3;
  double flo = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double hi = 1e-3 * std::pow(1e6, static_cast<double>(i) / n);
    const double fhi = f(hi);
    if ((flo > 0.0) != (fhi > 0.0)) return bisect_root(f, lo, hi, 1e-6);
    lo = hi;
    flo = fhi;
  }
  throw NumericError("R_min has no solution on [1e-3, 1e3]");
}

}  // namespace

double leff_of_elevation(double elevation_deg, const PathGeometry& geom) {
  check_elevation(elevation_deg);
  return anchored_effective_path(geom.at_elevation(elevation_deg));
}

double snr_of_elevation(double elevation_deg, double snr0, double base_elevation_deg) {
  check_elevation(elevation_deg);
  check_elevation(base_elevation_deg);
  const double r = std::sin(elevation_deg * deg) / std::sin(base_elevation_deg * deg);
  return snr0 * r * r;
}

double elevation_noise_variance(const LinkModel& model, double elevation_deg, double rain_rate,
                                ElevationLosses losses) {
  const LinkConfig& cfg = model.config();
  const double c0 = db_noise_constant();
  const double np = static_cast<double>(cfg.pilot_symbols());
  const double base = cfg.geometry.base_elevation_deg;
  const auto raw = [&](double el, double r) {
    const double snr = snr_of_elevation(el, cfg.snr0(), base) * db_to_linear(-path_loss_db(model, el, r, losses));
    return pilot_noise_variance(c0, np, snr, cfg.sigma_sys_db);
  };
  return cfg.sigma_n_db * cfg.sigma_n_db * raw(elevation_deg, rain_rate) / raw(base, 0.0);
}

double elevation_crb(const LinkModel& model, double elevation_deg, double rain_rate, NoiseProfile profile,
                     ElevationLosses losses) {
  if (!(rain_rate > 0.0)) throw DomainError("R must be > 0");
  const double l = leff_of_elevation(elevation_deg, model.config().geometry);
  const auto& c = model.coefficients();
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double g = c.k[i] * c.alpha[i] * std::pow(rain_rate, c.alpha[i] - 1.0) * l;
    s += g * g;
  }
  const double var = profile == NoiseProfile::constant
                         ? model.config().sigma_n_db * model.config().sigma_n_db
                         : elevation_noise_variance(model, elevation_deg, rain_rate, losses);
  return var / s;
}

double rmin_of_elevation(const LinkModel& model, double elevation_deg, NoiseProfile profile, ElevationLosses losses) {
  return first_unit_crossing([&](double r) { return elevation_crb(model, elevation_deg, r, profile, losses); });
}

ClosedFormOptimum sensing_optimal_elevation_closed(double pilot_count, double sigma_sys, double c0, double snr0,
                                                   double base_elevation_deg) {
  if (!(snr0 > 0.0)) throw DomainError("gamma0 must be > 0");
  if (!(pilot_count >= 1.0)) throw DomainError("pilot count must be >= 1");
  if (!(c0 > 0.0)) throw DomainError("c0 must be > 0");
  check_elevation(base_elevation_deg);
  ClosedFormOptimum r;
  r.x_star = 1.0 + std::sqrt(1.0 + pilot_count * sigma_sys * sigma_sys / c0);
  r.beta_star = 1.0 / (r.x_star - 1.0);
  const double s = std::sin(base_elevation_deg * deg) * std::sqrt(r.beta_star / snr0);
  if (s >= 1.0) {
    r.saturated = true;
    r.elevation_deg = 90.0;
  } else {
    r.elevation_deg = std::asin(s) / deg;
  }
  return r;
}

double sensing_optimal_elevation_numeric(const LinkModel& model, ElevationLosses losses, double lo, double hi,
                                         double tol) {
  return golden_section_min(
      [&](double el) {
        try {
          return rmin_of_elevation(model, el, NoiseProfile::realistic, losses);
        } catch (const NumericError&) {
          return std::numeric_limits<double>::infinity();
        }
      },
      lo, hi, tol);
}

std::vector<ElevationRow> elevation_sweep(const LinkModel& model, std::span<const double> elevations,
                                          ElevationLosses losses) {
  const LinkConfig& cfg = model.config();
  std::vector<ElevationRow> rows;
  rows.reserve(elevations.size());
  for (double el : elevations) {
    if (!(el >= 5.0 && el <= 90.0)) throw DomainError("sweep elevations must lie in [5, 90] deg");
    ElevationRow r;
    r.elevation_deg = el;
    r.leff_km = leff_of_elevation(el, cfg.geometry);
    r.snr_db = linear_to_db(snr_of_elevation(el, cfg.snr0(), cfg.geometry.base_elevation_deg));
    try {
      r.rmin_realistic = rmin_of_elevation(model, el, NoiseProfile::realistic, losses);
    } catch (const NumericError&) {
      r.rmin_realistic = std::numeric_limits<double>::quiet_NaN();
    }
    r.rmin_constant = rmin_of_elevation(model, el, NoiseProfile::constant, losses);
    r.p618_extrapolation = el < p618_floor_deg;
    rows.push_back(r);
  }
  return rows;
}

std::vector<LocusPoint> optimal_locus(const LinkModel& model, std::span<const double> rain_rates,
                                      ElevationLosses losses, double floor_deg) {
  const LinkConfig& cfg = model.config();
  std::vector<LocusPoint> out;
  for (double r : rain_rates) {
    if (!(r > 0.0)) throw DomainError("locus rain rates must be > 0");
    LocusPoint p;
    p.rain_rate = r;
    p.sensing_deg = scan_min(
        [&](double el) { return elevation_crb(model, el, r, NoiseProfile::realistic, losses); }, floor_deg, 90.0,
        0.25, 1e-3);
    p.comm_deg = scan_min(
        [&](double el) {
          const double snr = snr_of_elevation(el, cfg.snr0(), cfg.geometry.base_elevation_deg) *
                             db_to_linear(-path_loss_db(model, el, r, losses));
          return -spectral_efficiency(cfg.pilot_fraction, cfg.n_sym, snr);
        },
        floor_deg, 90.0, 0.25, 1e-3);
    out.push_back(p);
  }
  return out;
}

}  // namespace rainbound
