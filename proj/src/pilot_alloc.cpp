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

#include "rainbound/pilot_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rainbound/errors.hpp"
#include "rainbound/link_rate.hpp"
#include "rainbound/optimize.hpp"

namespace rainbound {

void AllocationPolicy::validate() const {
  if (!(eta_min > 0.0 && eta_min < eta_max && eta_max < 1.0)) throw ConfigError("policy needs 0 < eta_min < eta_max < 1");
  if (!(c_min > 0.0)) throw ConfigError("c_min must be > 0");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(rate_tolerance > 0.0)) throw ConfigError("rate tolerance must be > 0");
  if (!std::isfinite(baseline_db)) throw ConfigError("baseline attenuation must be finite");
}

int AllocationPolicy::bisection_iterations() const {
  return std::max(0, static_cast<int>(std::ceil(std::log2((eta_max - eta_min) / epsilon))));
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::full_sensing: return "full_sensing";
    case Regime::throughput_tracking: return "throughput_tracking";
    case Regime::outage: return "outage";
  }
  return "unknown";
}

double allocation_snr(const LinkModel& model, double rain_rate, const AllocationPolicy& policy) {
  return mean_snr_under_rain(model.config().snr0(), model.mean_rain_attenuation(rain_rate) + policy.baseline_db);
}

double allocation_bound(const LinkModel& model, double rain_rate, double eta, double mean_snr,
                        const RainPrior& prior, int window) {
  const double sigma = model.sigma_n(eta, mean_snr);
  const double jd = model.data_information(rain_rate, sigma);
  return bcrb(jd, prior_fisher_info(prior), temporal_gain(prior.rho, window)).rmse;
}

AllocationResult eta_star(const LinkModel& model, double rain_rate, const AllocationPolicy& policy,
                          const RainPrior& prior, int window) {
  policy.validate();
  if (!(rain_rate >= 0.0)) throw DomainError("rain rate must be >= 0");
  const double n = model.config().n_sym;
  const double snr = allocation_snr(model, rain_rate, policy);
  const auto c = [&](double eta) { return spectral_efficiency(eta, n, snr); };

  AllocationResult res;
  res.mean_snr = snr;
  const double eta_rate = throughput_optimal_eta(snr, n);
  const double lo_edge = std::clamp(eta_rate, policy.eta_min, policy.eta_max);

  if (c(policy.eta_max) >= policy.c_min) {
    res.regime = Regime::full_sensing;
    res.eta_star = policy.eta_max;
  } else if (c(lo_edge) < policy.c_min) {
    res.regime = Regime::outage;
    res.eta_star = lo_edge;
  } else {
    // Invariant: lo feasible, hi infeasible.
    double lo = lo_edge;
    double hi = policy.eta_max;
    const int iters = policy.bisection_iterations();
    for (int i = 0; i < iters; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (c(mid) >= policy.c_min)
        lo = mid;
      else
        hi = mid;
    }
    res.regime = Regime::throughput_tracking;
    res.eta_star = lo;
    res.iterations = iters;
  }
  res.achieved_c = c(res.eta_star);
  res.bound_rmse = rain_rate > 0.0 ? allocation_bound(model, rain_rate, res.eta_star, snr, prior, window)
                                   : std::sqrt(1.0 / prior_fisher_info(prior));
  return res;
}

RegimeThresholds regime_thresholds(const LinkModel& model, const AllocationPolicy& policy, double r_max) {
  policy.validate();
  const double n = model.config().n_sym;
  const auto sat_margin = [&](double r) {
    return spectral_efficiency(policy.eta_max, n, allocation_snr(model, r, policy)) - policy.c_min;
  };
  const auto out_margin = [&](double r) {
    const double snr = allocation_snr(model, r, policy);
    const double eta = std::clamp(throughput_optimal_eta(snr, n), policy.eta_min, policy.eta_max);
    return spectral_efficiency(eta, n, snr) - policy.c_min;
  };
  const auto threshold = [&](const std::function<double(double)>& margin) {
    if (margin(0.0) < 0.0) return 0.0;
    if (margin(r_max) >= 0.0) return r_max;
    return bisect_root(margin, 0.0, r_max, 1e-9);
  };
  RegimeThresholds t;
  t.r_sat = threshold(sat_margin);
  t.r_out = threshold(out_margin);
  return t;
}

HighSnrEta eta_high_snr(double mean_snr, double c_min) {
  if (!(mean_snr > 0.0)) throw DomainError("mean SNR must be > 0");
  HighSnrEta r;
  r.eta = std::clamp(1.0 - c_min / std::log2(1.0 + mean_snr), 0.0, 1.0);
  r.below_validity = mean_snr < 10.0;
  return r;
}

std::vector<SweepRow> allocation_sweep(const LinkModel& model, std::span<const double> rain_rates,
                                       std::span<const double> c_mins, const AllocationPolicy& policy,
                                       const RainPrior& prior, int window, std::span<const double> fixed_etas) {
  if (rain_rates.empty() || c_mins.empty()) throw ConfigError("allocation sweep needs non-empty grids");
  std::vector<SweepRow> rows;
  for (double cm : c_mins) {
    AllocationPolicy p = policy;
    p.c_min = cm;
    for (double r : rain_rates) {
      SweepRow row;
      row.rain_rate = r;
      row.c_min = cm;
      row.adaptive = eta_star(model, r, p, prior, window);
      double best = std::numeric_limits<double>::infinity();
      for (double eta : fixed_etas) {
        BaselinePoint b;
        b.eta = eta;
        b.achieved_c = spectral_efficiency(eta, model.config().n_sym, row.adaptive.mean_snr);
        b.feasible = b.achieved_c >= cm;
        b.bound_rmse = r > 0.0 ? allocation_bound(model, r, eta, row.adaptive.mean_snr, prior, window)
                               : std::sqrt(1.0 / prior_fisher_info(prior));
        if (b.feasible) best = std::min(best, b.bound_rmse);
        row.baselines.push_back(b);
      }
      row.improvement = std::isfinite(best)
                            ? 1.0 - (row.adaptive.bound_rmse * row.adaptive.bound_rmse) / (best * best)
                            : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace rainbound
