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
#include <random>

#include "rainbound/errors.hpp"
#include "rainbound/fisher_bounds.hpp"
#include "rainbound/link_model.hpp"
#include "rainbound/rain_estimate.hpp"

using namespace rainbound;

namespace {

struct RandomState {
  AtmosphericState state;
  PathGeometry geom;
  double sigma = 1.0;
};

RandomState draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomState s;
  s.state.rain_rate = std::exp(std::log(0.5) + u(rng) * std::log(200.0));
  s.state.water_vapor = 2.0 + 18.0 * u(rng);
  s.state.cloud_lwc = 0.5 * u(rng);
  s.state.offset = u(rng) - 0.5;
  s.geom.elevation_deg = 10.0 + 80.0 * u(rng);
  s.sigma = 0.25 + 1.75 * u(rng);
  return s;
}

}  // namespace

TEST_CASE("rain gradient matches central differences") {
  std::mt19937_64 rng(11);
  for (auto mode : {CoefficientMode::per_subcarrier, CoefficientMode::band_average}) {
    const auto g = FrequencyGrid::uniform(10.7, 12.7, 5);
    const auto coefs = make_coefficients(g, mode);
    for (int i = 0; i < 100; ++i) {
      const auto s = draw(rng);
      const auto sens = sensitivity_matrix(s.state, g, coefs, s.geom, param_all);
      const double h = 1e-5 * s.state.rain_rate;
      AtmosphericState up = s.state, dn = s.state;
      up.rain_rate += h;
      dn.rain_rate -= h;
      const auto a = attenuation_vector(up, g, coefs, s.geom);
      const auto b = attenuation_vector(dn, g, coefs, s.geom);
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double fd = (a[k] - b[k]) / (2.0 * h);
        CHECK(std::abs(fd - sens(k, 0)) <= 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("nuisance parameters never lower the bound") {
  std::mt19937_64 rng(12);
  const auto g = FrequencyGrid::uniform(10.7, 12.7, 20);
  const auto coefs = make_coefficients(g, CoefficientMode::per_subcarrier);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const auto s = draw(rng);
    const double crb0 = crb_rain_only(s.state, g, coefs, s.geom, s.sigma);
    for (unsigned mask : {param_rain | param_water_vapor, param_rain | param_offset,
                          param_rain | param_water_vapor | param_cloud}) {
      const auto j = fim(sensitivity_matrix(s.state, g, coefs, s.geom, mask), s.sigma);
      try {
        CHECK(crb_joint_schur(j) >= crb0 * (1.0 - 1e-9));
        ++checked;
      } catch (const UnidentifiableError&) {
        CHECK(condition_number(j) > 1e8);
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("temporal pooling pays off for persistent rain") {
  const LinkModel m{LinkConfig{}};
  const double jd = m.data_information(20.0);
  for (double rho : {0.86, 0.9, 0.95, 0.99}) {
    RainPrior p;
    p.rho = rho;
    const double ratio = bcrb(jd, prior_fisher_info(p), temporal_gain(rho, 30)).variance * jd;
    CHECK(ratio < 0.5);
  }
}

TEST_CASE("temporal gain is monotone and bounded") {
  for (double rho : {0.0, 0.3, 0.8, 0.95}) {
    double prev = 0.0;
    for (int t = 1; t <= 200; t *= 2) {
      const double g = temporal_gain(rho, t);
      CHECK(g >= prev);
      CHECK(g <= temporal_gain_limit(rho) + 1e-12);
      prev = g;
    }
  }
}

TEST_CASE("noiseless MLE recovers random rates") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.5, 60.0);
  const LinkModel m{LinkConfig{}};
  for (int i = 0; i < 50; ++i) {
    const double r = u(rng);
    EstimationProblem p;
    p.observed = m.attenuation(r);
    p.k = m.coefficients().k;
    p.alpha = m.coefficients().alpha;
    p.nuisance = m.nuisance_attenuation();
    p.path_km = m.rain_path();
    p.sigma_n = 1.0;
    p.centre = m.centre_stats();
    const auto rep = mle_newton(p);
    CHECK(rep.converged);
    CHECK(rep.estimate == doctest::Approx(r).epsilon(1e-6));
  }
}
