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
#include "rainbound/link_model.hpp"
#include "rainbound/rain_estimate.hpp"

using namespace rainbound;

namespace {

const LinkModel& model() {
  static const LinkModel m{LinkConfig{}};
  return m;
}

EstimationProblem problem(std::vector<double> observed, double sigma = 1.0) {
  EstimationProblem p;
  p.observed = std::move(observed);
  p.k = model().coefficients().k;
  p.alpha = model().coefficients().alpha;
  p.nuisance = model().nuisance_attenuation();
  p.path_km = model().rain_path();
  p.sigma_n = sigma;
  p.centre = model().centre_stats();
  return p;
}

}  // namespace

TEST_CASE("initializer") {
  const std::vector<double> c{0.1, 0.1};
  const std::vector<double> a{0.1 + 0.022 * std::pow(10.0, 1.19) * 3.0, 0.1 + 0.022 * std::pow(10.0, 1.19) * 3.0};
  const auto init = mle_init(a, c, {0.022, 1.19}, 3.0);
  CHECK_FALSE(init.floored);
  CHECK(init.rate == doctest::Approx(10.0));
  const auto floored = mle_init(c, c, {0.022, 1.19}, 3.0);
  CHECK(floored.floored);
  CHECK(floored.rate == mle_init_floor);
  CHECK_THROWS_AS(mle_init(a, std::vector<double>{0.0}, {0.022, 1.19}, 3.0), DomainError);
}

TEST_CASE("problem validation") {
  auto p = problem(model().attenuation(5.0));
  CHECK_NOTHROW(p.validate());
  p.sigma_n = 0.0;
  CHECK_THROWS_AS(mle_newton(p), DomainError);
  p = problem(model().attenuation(5.0));
  p.k.pop_back();
  CHECK_THROWS_AS(mle_newton(p), DomainError);
  p = problem(model().attenuation(5.0));
  p.observed[0] = NAN;
  CHECK_THROWS_AS(mle_newton(p), DomainError);
  p = problem({});
  CHECK_THROWS_AS(mle_newton(p), DomainError);
}

TEST_CASE("noiseless recovery") {
  for (double r : {0.5, 2.0, 5.0, 20.0, 50.0, 100.0}) {
    const auto rep = mle_newton(problem(model().attenuation(r)));
    CHECK(rep.converged);
    CHECK(std::abs(rep.estimate - r) < 1e-6 * r);
    CHECK(rep.objective < 1e-12);
    CHECK(rep.iterations <= 25);
  }
}

TEST_CASE("MAP shrinks toward the prior mode") {
  const RainPrior prior;
  // Data carry no information when sigma_n is huge: MAP returns the mode.
  const auto flat = map_newton(problem(model().attenuation(20.0), 1e6), prior);
  CHECK(flat.converged);
  CHECK(flat.estimate == doctest::Approx(prior.mode()).epsilon(1e-4));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> rate(0.5, 40.0);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    auto obs = model().attenuation(rate(rng));
    for (double& v : obs) v += noise(rng);
    const auto p = problem(obs);
    const auto mle = mle_newton(p);
    const auto map = map_newton(p, prior);
    if (!mle.converged || !map.converged) continue;
    const double lo = std::min(mle.estimate, prior.mode());
    const double hi = std::max(mle.estimate, prior.mode());
    CHECK(map.estimate >= lo * (1 - 1e-6));
    CHECK(map.estimate <= hi * (1 + 1e-6));
    ++checked;
  }
  CHECK(checked > 950);
}

TEST_CASE("noisy fits converge at moderate rain") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  int converged = 0;
  for (int t = 0; t < 500; ++t) {
    auto obs = model().attenuation(20.0);
    for (double& v : obs) v += noise(rng);
    converged += mle_newton(problem(obs)).converged ? 1 : 0;
  }
  CHECK(converged == 500);
}

TEST_CASE("estimates stay inside the clamp") {
  std::vector<double> neg(5, -50.0);
  const auto low = mle_newton(problem(neg));
  CHECK(low.init_floored);
  CHECK(low.estimate >= 1e-4 * (1 - 1e-12));
  std::vector<double> huge(5, 1e6);
  CHECK(mle_newton(problem(huge)).estimate <= 1e4 * (1 + 1e-12));
}

TEST_CASE("fusion") {
  const std::vector<double> est{1.0, 2.0, 3.0};
  const std::vector<double> eq{2.0, 2.0, 2.0};
  CHECK(fuse_estimates(est, eq) == doctest::Approx(2.0));
  CHECK(fuse_estimates(std::vector<double>{4.2}, std::vector<double>{0.3}) == 4.2);
  const std::vector<double> w{1.0, 3.0, 0.5};
  std::vector<double> w2(w);
  for (double& v : w2) v *= 1024.0;
  CHECK(std::abs(fuse_estimates(est, w) - fuse_estimates(est, w2)) <= 1e-15);
  CHECK_THROWS_AS(fuse_estimates(est, std::vector<double>{0, 0, 0}), DomainError);
  CHECK_THROWS_AS(fuse_estimates(est, std::vector<double>{1, -1, 1}), DomainError);
  CHECK_THROWS_AS(fuse_estimates(est, std::vector<double>{1, 1}), DomainError);
}

TEST_CASE("objective never increases across accepted steps") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    auto obs = model().attenuation(t % 2 ? 2.0 : 30.0);
    for (double& v : obs) v += noise(rng);
    for (const auto& rep : {mle_newton(problem(obs)), map_newton(problem(obs), RainPrior{})}) {
      REQUIRE(rep.objective_trace.size() >= 1);
      for (std::size_t i = 1; i < rep.objective_trace.size(); ++i)
        CHECK(rep.objective_trace[i] <= rep.objective_trace[i - 1]);
      CHECK(rep.objective_trace.back() == rep.objective);
    }
  }
}
