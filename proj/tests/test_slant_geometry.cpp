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

#include <doctest.h>

#include <cmath>

#include "rainbound/errors.hpp"
#include "rainbound/slant_geometry.hpp"

using namespace rainbound;

namespace {

const LinkModel& model() {
  static const LinkModel m{LinkConfig{}};
  return m;
}

}  // namespace

TEST_CASE("anchored path and SNR scaling") {
  const PathGeometry g;
  CHECK(leff_of_elevation(38.0, g) == doctest::Approx(3.0));
  CHECK(leff_of_elevation(90.0, g) == doctest::Approx(3.0 * std::sin(38.0 * M_PI / 180.0)));
  CHECK(leff_of_elevation(15.0, g) > leff_of_elevation(20.0, g));
  CHECK(snr_of_elevation(38.0, 10.0, 38.0) == doctest::Approx(10.0));
  CHECK(snr_of_elevation(90.0, 10.0, 38.0) == doctest::Approx(10.0 / std::pow(std::sin(38.0 * M_PI / 180.0), 2)));
  CHECK_THROWS_AS(leff_of_elevation(3.0, g), DomainError);
  CHECK_THROWS_AS(snr_of_elevation(95.0, 10.0, 38.0), DomainError);
}

TEST_CASE("noise normalization at the base elevation") {
  CHECK(elevation_noise_variance(model(), 38.0, 0.0, {}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(elevation_noise_variance(model(), 15.0, 0.0, {}) > 1.0);
  CHECK(elevation_noise_variance(model(), 60.0, 0.0, {}) < 1.0);
}

TEST_CASE("R_min versus elevation") {
  const double base = rmin_of_elevation(model(), 38.0, NoiseProfile::realistic);
  const double r15 = rmin_of_elevation(model(), 15.0, NoiseProfile::realistic);
  const double r20 = rmin_of_elevation(model(), 20.0, NoiseProfile::realistic);
  CHECK(base == doctest::Approx(4.2843).epsilon(1e-3));
  CHECK(r15 == doctest::Approx(2.67).epsilon(0.1 / 2.67));
  CHECK(r20 == doctest::Approx(2.92).epsilon(0.1 / 2.92));
  CHECK(r15 / base == doctest::Approx(1.0 / 1.58).epsilon(0.05 / 1.58));
  // The constant-noise curve is pure geometry: shorter paths sense less.
  CHECK(rmin_of_elevation(model(), 15.0, NoiseProfile::constant) < rmin_of_elevation(model(), 60.0, NoiseProfile::constant));
  CHECK(rmin_of_elevation(model(), 38.0, NoiseProfile::constant) == doctest::Approx(4.2642).epsilon(1e-4));
}

TEST_CASE("sensing-optimal elevation") {
  const auto cf = sensing_optimal_elevation_closed(30.0, 0.63, db_noise_constant(), 10.0, 38.0);
  CHECK(cf.elevation_deg == doctest::Approx(9.92).epsilon(1e-3));
  CHECK_FALSE(cf.saturated);
  const double num = sensing_optimal_elevation_numeric(model(), {false, false});
  CHECK(std::abs(num - cf.elevation_deg) < 0.2);
  // Low SNR budget pushes the optimum to zenith.
  CHECK(sensing_optimal_elevation_closed(30.0, 0.63, db_noise_constant(), 0.01, 38.0).saturated);
}

TEST_CASE("elevation sweep flags the P.618 extrapolation zone") {
  const std::vector<double> els{10.0, 15.0, 30.0};
  const auto rows = elevation_sweep(model(), els);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].p618_extrapolation);
  CHECK_FALSE(rows[1].p618_extrapolation);
  CHECK_FALSE(rows[2].p618_extrapolation);
  CHECK(rows[2].leff_km == doctest::Approx(leff_of_elevation(30.0, PathGeometry{})));
  const std::vector<double> bad{4.0};
  CHECK_THROWS_AS(elevation_sweep(model(), bad), DomainError);
}

TEST_CASE("grazing elevations cannot reach unit relative error") {
  // Gas and rain loss at 5 deg keep sqrt(CRB) above R for every rate; 6 deg has a window.
  CHECK_THROWS_AS(rmin_of_elevation(model(), 5.0, NoiseProfile::realistic), NumericError);
  const double r6 = rmin_of_elevation(model(), 6.0, NoiseProfile::realistic);
  CHECK(std::sqrt(elevation_crb(model(), 6.0, r6, NoiseProfile::realistic, {})) == doctest::Approx(r6).epsilon(1e-5));
  const std::vector<double> els{5.0, 6.0};
  const auto rows = elevation_sweep(model(), els);
  CHECK(std::isnan(rows[0].rmin_realistic));
  CHECK(rows[1].rmin_realistic == doctest::Approx(r6));
  CHECK(std::isfinite(rows[0].rmin_constant));
  const double full = sensing_optimal_elevation_numeric(model(), {});
  CHECK(full > 6.0);
  CHECK(full < 15.0);
}

TEST_CASE("optimal locus") {
  const std::vector<double> rates{3.0, 25.0};
  const auto pts = optimal_locus(model(), rates);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].sensing_deg == doctest::Approx(15.0));
  CHECK(pts[1].sensing_deg > pts[0].sensing_deg);
  CHECK(pts[0].comm_deg == doctest::Approx(90.0));
  CHECK(pts[0].gap_deg() >= 65.0);
  CHECK(pts[1].gap_deg() <= 75.0);
  for (const auto& p : pts) CHECK(p.sensing_deg >= p618_floor_deg);
}
