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
#include "rainbound/rain_detect.hpp"

using namespace rainbound;

namespace {

CusumConfig default_cusum() { return make_cusum_config(5.0, {0.022, 1.19}, 3.0, 1.0, 1e-3); }

}  // namespace

TEST_CASE("design quantities") {
  const auto c = default_cusum();
  CHECK(c.mu_d == doctest::Approx(0.022 * std::pow(5.0, 1.19) * 3.0));
  CHECK(c.mu_d == doctest::Approx(0.4480).epsilon(1e-3));
  CHECK(c.h == doctest::Approx(std::log(1000.0) / c.mu_d));
  CHECK(c.h == doctest::Approx(15.4177).epsilon(1e-4));
  CHECK(design_mean(0.0, {0.022, 1.19}, 3.0) == 0.0);
  CHECK_THROWS_AS(make_cusum_config(0.0, {0.022, 1.19}, 3.0, 1.0, 1e-3), DomainError);
  CHECK_THROWS_AS(make_cusum_config(5.0, {0.022, 1.19}, 3.0, 0.0, 1e-3), DomainError);
  CHECK_THROWS_AS(make_cusum_config(5.0, {0.022, 1.19}, 3.0, 1.0, 0.7), DomainError);
}

TEST_CASE("Wald delay") {
  const auto c = default_cusum();
  CHECK(add_wald(20.0, c) == doctest::Approx(7.313191077944791).epsilon(1e-9));
  CHECK(add_wald(50.0, c) == doctest::Approx(2.2958946820520425).epsilon(1e-9));
  CHECK(add_wald(20.0, c) < 8.0);
  CHECK(add_wald(50.0, c) < 3.0);
  // Below the half-design rate the drift is negative.
  CHECK_THROWS_AS(add_wald(1.0, c), UndetectableError);
  double prev = add_wald(5.0, c);
  for (double r = 6.0; r <= 100.0; r += 1.0) {
    const double a = add_wald(r, c);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("detection probability approximation") {
  const auto c = default_cusum();
  CHECK(detection_probability(1.0, 10.0, c) == 0.0);
  CHECK(detection_probability(20.0, 10.0, c) == doctest::Approx(1.0 - std::exp(-10.0 / 7.313191077944791)));
  CHECK(detection_probability(20.0, 30.0, c) > detection_probability(20.0, 10.0, c));
  CHECK_THROWS_AS(detection_probability(20.0, 0.0, c), DomainError);
}

TEST_CASE("run lengths under clear sky") {
  const auto c = default_cusum();
  CHECK(arl0_wald(c) == doctest::Approx(1000.0));
  CHECK(arl0_siegmund(c) > arl0_wald(c));
}

TEST_CASE("CUSUM recursion") {
  const auto c = default_cusum();
  CusumState s;
  s = cusum_update(s, 0.0, c);
  CHECK(s.s == 0.0);
  CHECK(s.t == 1);
  s = cusum_update(s, c.mu_d, c);
  CHECK(s.s == doctest::Approx(0.5 * c.mu_d));
  CHECK_FALSE(s.alarmed);
  s = cusum_update(s, 100.0, c);
  CHECK(s.alarmed);
  CHECK(s.alarm_time == 2u);
  // The alarm latches: a later quiet sample does not clear it.
  s = cusum_update(s, -1000.0, c);
  CHECK(s.alarmed);
  CHECK(s.alarm_time == 2u);
  CHECK(s.s == 0.0);
  CHECK_THROWS_AS(cusum_update(s, NAN, c), DomainError);
}

TEST_CASE("series detection") {
  const auto c = default_cusum();
  const std::vector<double> zeros(100, 0.0);
  const auto none = run_series(zeros, c);
  CHECK_FALSE(none.alarm_index);
  CHECK(none.trajectory.size() == 100);

  // Constant step at R = 20: alarm after roughly h / drift samples.
  std::vector<double> step(10, 0.0);
  step.resize(40, c.mean_attenuation(20.0));
  const auto det = run_series(step, c);
  REQUIRE(det.alarm_index);
  CHECK(*det.alarm_index == 10 + static_cast<std::size_t>(std::floor(c.h / c.drift(20.0))));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<double> noisy(2000);
  for (double& v : noisy) v = n(rng);
  for (double v : run_series(noisy, c).trajectory) CHECK(v >= 0.0);
}
