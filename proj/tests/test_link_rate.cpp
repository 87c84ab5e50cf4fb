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
#include "rainbound/link_rate.hpp"

using namespace rainbound;

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(linear_to_db(1000.0) == doctest::Approx(30.0));
  CHECK(mean_snr_under_rain(10.0, 3.0) == doctest::Approx(10.0 * std::pow(10.0, -0.3)));
  CHECK(mean_snr_under_rain(10.0, 0.0) == 10.0);
  CHECK_THROWS_AS(mean_snr_under_rain(0.0, 1.0), DomainError);
}

TEST_CASE("CSI error") {
  CHECK(csi_mse(0.1, 302.0, 10.0) == doctest::Approx(1.0 / 302.0));
  CHECK_THROWS_AS(csi_mse(0.001, 302.0, 10.0), DomainError);
}

TEST_CASE("spectral efficiency") {
  CHECK_THROWS_AS(spectral_efficiency(0.0, 302.0, 10.0), DomainError);
  CHECK_THROWS_AS(spectral_efficiency(1.0, 302.0, 10.0), DomainError);
  // Perfect-CSI limit: (1 - eta) log2(1 + gamma) as eta N grows.
  CHECK(spectral_efficiency(0.5, 1e9, 10.0) == doctest::Approx(0.5 * std::log2(11.0)).epsilon(1e-6));
  // More pilots cost rate above the optimum.
  CHECK(spectral_efficiency(0.2, 302.0, 10.0) > spectral_efficiency(0.4, 302.0, 10.0));
}

TEST_CASE("throughput-optimal pilot fraction") {
  const double eta = throughput_optimal_eta(10.0, 302.0);
  CHECK(eta == doctest::Approx((std::sqrt(3021.0) - 1.0) / 3020.0).epsilon(1e-12));
  CHECK(eta == doctest::Approx(0.018).epsilon(0.001 / 0.018));
  CHECK_THROWS_AS(throughput_optimal_eta(0.0, 302.0), DomainError);
  // The closed form maximizes a surrogate; the true argmax is interior and
  // C falls off beyond the closed form.
  const double arg = spectral_efficiency_argmax(302.0, 10.0);
  CHECK(arg > 0.0);
  CHECK(arg < eta);
  CHECK(spectral_efficiency(eta, 302.0, 10.0) > spectral_efficiency(2.0 * eta, 302.0, 10.0));
}
