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

#include "rainbound/rain_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rainbound/errors.hpp"

namespace rainbound {

namespace {

constexpr int max_iterations = 25;
constexpr int max_halvings = 20;
constexpr double step_tol = 1e-6;
const double x_lo = std::log(1e-4);
const double x_hi = std::log(1e4);

struct Local {
  double value = 0.0;
  double grad = 0.0;
  double hess = 0.0;     // exact second derivative
  double hess_gn = 0.0;  // Gauss-Newton part, always >= 0
};

struct PriorTerm {
  double mu;
  double s2;
};

Local evaluate(const EstimationProblem& p, double x, const std::optional<PriorTerm>& prior) {
  Local o;
  const double inv_var = 1.0 / (p.sigma_n * p.sigma_n);
  for (std::size_t i = 0; i < p.observed.size(); ++i) {
    const double m = p.k[i] * std::exp(p.alpha[i] * x) * p.path_km;
    const double r = p.observed[i] - p.nuisance[i] - m;
    const double d = p.alpha[i] * m;
    o.value += r * r;
    o.grad -= r * d;
    o.hess_gn += d * d;
    o.hess += d * d - r * p.alpha[i] * d;
  }
  o.value *= 0.5 * inv_var;
  o.grad *= inv_var;
  o.hess *= inv_var;
  o.hess_gn *= inv_var;
  if (prior) {
    const double z = x - prior->mu;
    o.value += z * z / (2.0 * prior->s2) + x;
    o.grad += z / prior->s2 + 1.0;
    o.hess += 1.0 / prior->s2;
    o.hess_gn += 1.0 / prior->s2;
  }
  return o;
}

EstimatorReport solve(const EstimationProblem& p, const std::optional<PriorTerm>& prior) {
  p.validate();
  const InitResult init = mle_init(p.observed, p.nuisance, p.centre, p.path_km);
  EstimatorReport rep;
  rep.initializer = init.rate;
  rep.init_floored = init.floored;

  double x = std::clamp(std::log(init.rate), x_lo, x_hi);
  Local cur = evaluate(p, x, prior);
  rep.objective_trace.push_back(cur.value);
  for (int it = 1; it <= max_iterations; ++it) {
    rep.iterations = it;
    // Full Newton where the objective is locally convex; the Gauss-Newton
    // curvature otherwise. Large-residual (noise-dominated) fits need the
    // exact term to converge within the iteration budget.
    const double curvature = cur.hess > 0.0 ? cur.hess : cur.hess_gn;
    if (!(curvature > 0.0)) break;
    const double step = -cur.grad / curvature;
    double t = 1.0;
    double xn = x;
    Local next;
    bool accepted = false;
    for (int h = 0; h <= max_halvings; ++h) {
      xn = std::clamp(x + t * step, x_lo, x_hi);
      next = evaluate(p, xn, prior);
      if (next.value <= cur.value) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No descent along the Newton direction: at a stationary point to
      // within rounding if the proposed step was already tiny.
      rep.converged = std::abs(step) < step_tol;
      break;
    }
    const double dx = xn - x;
    x = xn;
    cur = next;
    rep.objective_trace.push_back(cur.value);
    if (std::abs(dx) < step_tol) {
      rep.converged = true;
      break;
    }
  }
  rep.estimate = std::exp(x);
  rep.objective = cur.value;
  return rep;
}

}  // namespace

void EstimationProblem::validate() const {
  const std::size_t n = observed.size();
  if (n == 0) throw DomainError("no observations");
  if (k.size() != n || alpha.size() != n || nuisance.size() != n) throw DomainError("observation vectors differ in length");
  if (!(path_km > 0.0)) throw DomainError("path length must be > 0");
  if (!(sigma_n > 0.0)) throw DomainError("sigma_n must be > 0");
  if (!(centre.k > 0.0) || !(centre.alpha > 0.0)) throw DomainError("centre coefficients must be > 0");
  for (double v : observed)
    if (!std::isfinite(v)) throw DomainError("observations must be finite");
}

InitResult mle_init(std::span<const double> observed, std::span<const double> nuisance, P838Coefficients centre,
                    double path_km) {
  if (observed.size() != nuisance.size() || observed.empty()) throw DomainError("observation vectors differ in length");
  double a = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) a += observed[i] - nuisance[i];
  a /= static_cast<double>(observed.size());
  if (!(a > 0.0)) return {mle_init_floor, true};
  return {std::pow(a / (centre.k * path_km), 1.0 / centre.alpha), false};
}

EstimatorReport mle_newton(const EstimationProblem& problem) { return solve(problem, std::nullopt); }

EstimatorReport map_newton(const EstimationProblem& problem, const RainPrior& prior) {
  prior.validate();
  return solve(problem, PriorTerm{prior.mu_ln(), prior.sigma_ln2()});
}

double fuse_estimates(std::span<const double> estimates, std::span<const double> informations) {
  if (estimates.size() != informations.size()) throw DomainError("estimates and informations differ in length");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (!(informations[i] >= 0.0)) throw DomainError("informations must be >= 0");
    num += informations[i] * estimates[i];
    den += informations[i];
  }
  if (!(den > 0.0)) throw DomainError("all fusion weights are zero");
  return num / den;
}

}  // namespace rainbound
