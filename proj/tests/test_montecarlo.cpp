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
#include "rainbound/montecarlo.hpp"

using namespace rainbound;

namespace {

const LinkModel& model() {
  static const LinkModel m{LinkConfig{}};
  return m;
}

double rmse_of_batch(std::size_t trials, std::uint64_t stream) {
  const std::vector<double> r{20.0};
  return estimator_efficiency_experiment(model(), RainPrior{}, r, 1.0, NoiseMode::db_gaussian, trials,
                                         {20240601, stream})[0]
      .mle_rmse;
}

double spread(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("engines are reproducible and independent") {
  auto a = make_engine({1, 2}, 3);
  auto b = make_engine({1, 2}, 3);
  auto c = make_engine({1, 2}, 4);
  auto d = make_engine({1, 3}, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  CHECK(splitmix64(0) != splitmix64(1));
  CHECK(std::string(noise_mode_name(NoiseMode::chi_squared_pilot)) == "chi2");
}

TEST_CASE("dB-Gaussian observations") {
  auto eng = make_engine({}, 0);
  CHECK(gen_observation(model(), 12.0, NoiseMode::db_gaussian, 0.0, eng) == model().attenuation(12.0));
  CHECK_THROWS_AS(gen_observation(model(), 12.0, NoiseMode::db_gaussian, -1.0, eng), DomainError);
  const auto s = observation_noise_experiment(model(), 12.0, NoiseMode::db_gaussian, 1.0, 20000, {});
  CHECK(std::abs(s.mean_error) < 0.01);
  CHECK(s.std_error * s.std_error == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("chi-squared pilot observations") {
  const auto s = observation_noise_experiment(model(), 0.0, NoiseMode::chi_squared_pilot, 1.0, 20000, {});
  const double snr = model().config().snr0() * std::pow(10.0, -model().attenuation(0.0)[2] / 10.0);
  const double predicted = std::sqrt(pilot_noise_variance(db_noise_constant(), static_cast<double>(model().config().pilot_symbols()), snr, 0.63));
  CHECK(s.std_error == doctest::Approx(predicted).epsilon(0.1));
  CHECK(std::abs(s.mean_error) < 0.2);
}

TEST_CASE("Gauss-Markov rain series") {
  const RainPrior prior;
  auto eng = make_engine({}, 0);
  const auto series = gen_rain_series(prior, 1000000, eng);
  const auto st = rain_series_stats(series);
  CHECK(st.lag1_log == doctest::Approx(0.95).epsilon(0.005 / 0.95));
  CHECK(st.mean == doctest::Approx(5.2).epsilon(0.02));

  RainPrior iid = prior;
  iid.rho = 0.0;
  auto eng2 = make_engine({}, 1);
  const auto white = rain_series_stats(gen_rain_series(iid, 1000000, eng2));
  CHECK(white.cv == doctest::Approx(1.05).epsilon(0.02));
  CHECK(std::abs(white.lag1_log) < 0.01);
  CHECK_THROWS_AS(gen_rain_series(prior, 0, eng), DomainError);
  CHECK_THROWS_AS(rain_series_stats(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("estimator efficiency") {
  const std::vector<double> r{2.0, 20.0};
  const auto rows = estimator_efficiency_experiment(model(), RainPrior{}, r, 1.0, NoiseMode::db_gaussian, 2000, {});
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].mle_ratio() >= 0.95);
  CHECK(rows[1].mle_ratio() <= 1.15);
  CHECK(rows[0].map_rmse < rows[0].mle_rmse);
  CHECK(rows[1].failures == 0);

  // Efficiency approaches 1 as the noise shrinks.
  const std::vector<double> r2{2.0};
  const auto loud = estimator_efficiency_experiment(model(), RainPrior{}, r2, 1.0, NoiseMode::db_gaussian, 2000, {});
  const auto quiet = estimator_efficiency_experiment(model(), RainPrior{}, r2, 0.25, NoiseMode::db_gaussian, 2000, {});
  CHECK(std::abs(quiet[0].mle_ratio() - 1.0) < std::abs(loud[0].mle_ratio() - 1.0));
}

TEST_CASE("Monte Carlo error shrinks as one over root trials") {
  std::vector<double> small, large;
  for (std::uint64_t b = 0; b < 16; ++b) {
    small.push_back(rmse_of_batch(100, 100 + b));
    large.push_back(rmse_of_batch(400, 200 + b));
  }
  const double ratio = spread(small) / spread(large);
  CHECK(ratio > 1.2);
  CHECK(ratio < 3.3);
}

TEST_CASE("experiments are bit-reproducible") {
  const std::vector<double> r{5.0, 20.0};
  const auto a = estimator_efficiency_experiment(model(), RainPrior{}, r, 1.0, NoiseMode::chi_squared_pilot, 300, {9, 1});
  const auto b = estimator_efficiency_experiment(model(), RainPrior{}, r, 1.0, NoiseMode::chi_squared_pilot, 300, {9, 1});
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(a[i].mle_rmse == b[i].mle_rmse);
    CHECK(a[i].map_rmse == b[i].map_rmse);
  }
  const auto cc = make_cusum_config(5.0, {0.022, 1.19}, 3.0, 1.0, 1e-3);
  const std::vector<double> rates{20.0};
  const std::vector<double> w{10.0};
  CHECK(cusum_delay_experiment(cc, rates, w, 200, {4, 0})[0].mc_add ==
        cusum_delay_experiment(cc, rates, w, 200, {4, 0})[0].mc_add);
}

TEST_CASE("CUSUM delay Monte Carlo") {
  const auto cc = make_cusum_config(5.0, {0.022, 1.19}, 3.0, 1.0, 1e-3);
  const std::vector<double> rates{1.0, 10.0, 20.0, 30.0, 50.0};
  const std::vector<double> w{10.0, 30.0};
  const auto rows = cusum_delay_experiment(cc, rates, w, 1000, {});
  CHECK(std::isnan(rows[0].wald_add));
  CHECK(std::isnan(rows[0].pd_mc[0]));
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].mc_add < rows[i - 1].mc_add);
  for (std::size_t i : {2u, 4u}) {
    CHECK(rows[i].ratio >= 1.0);
    CHECK(rows[i].ratio <= 1.3);
    CHECK(rows[i].censored == 0);
  }
  CHECK(rows[2].pd_mc[0] > 0.9);
  CHECK(rows[2].pd_mc[1] >= rows[2].pd_mc[0]);
  CHECK_THROWS_AS(cusum_delay_experiment(cc, rates, w, 0, {}), DomainError);
}

TEST_CASE("clear-sky run length") {
  const auto cc = make_cusum_config(5.0, {0.022, 1.19}, 3.0, 1.0, 1e-3);
  const double arl = arl0_experiment(cc, 300, {});
  // 1 / P_FA is Lorden's lower bound; Siegmund's correction is the estimate.
  CHECK(arl >= arl0_wald(cc));
  CHECK(arl == doctest::Approx(arl0_siegmund(cc)).epsilon(0.25));
}

TEST_CASE("multi-link scaling") {
  const std::vector<double> n{10, 20, 50, 100, 215};
  const auto rows = multilink_scaling_experiment(model(), RainPrior{}, n, 20.0, 30);
  const double slope = loglog_slope(rows);
  CHECK(slope >= -0.52);
  CHECK(slope <= -0.48);
  CHECK(rows.back().rmse == doctest::Approx(0.07).epsilon(0.01 / 0.07));
  const std::vector<double> one{1};
  CHECK(multilink_scaling_experiment(model(), RainPrior{}, one, 20.0, 30)[0].rmse == doctest::Approx(0.75).epsilon(0.01));
  const std::vector<double> zero{0};
  CHECK_THROWS_AS(multilink_scaling_experiment(model(), RainPrior{}, zero, 20.0, 30), DomainError);
  CHECK_THROWS_AS(loglog_slope(std::vector<ScalingRow>{{1, 1}}), DomainError);
}

TEST_CASE("prior score") {
  const double jp = prior_fisher_info(RainPrior{});
  const auto tilted = prior_score_experiment(RainPrior{}, 1000000, {});
  CHECK(tilted.mean == doctest::Approx(jp).epsilon(0.01));
  CHECK(tilted.std_error / tilted.mean < 0.003);
  const auto plain = prior_score_experiment(RainPrior{}, 1000000, {}, ScoreSampling::plain);
  CHECK(std::abs(plain.mean - jp) < 4.0 * plain.std_error);
  CHECK(plain.std_error > 5.0 * tilted.std_error);
  CHECK_THROWS_AS(prior_score_experiment(RainPrior{}, 1, {}), DomainError);
}

TEST_CASE("fusion across links") {
  const auto f = fusion_experiment(model(), 20.0, 215, 300, {});
  CHECK(f.fused_rmse == doctest::Approx(f.predicted_rmse).epsilon(0.15));
  CHECK_THROWS_AS(fusion_experiment(model(), 20.0, 0, 10, {}), DomainError);
}
