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
#include <string>
#include <vector>

#include "rainbound/fisher_bounds.hpp"
#include "rainbound/link_model.hpp"

namespace rainbound {

struct AllocationPolicy {
  double c_min = 1.0;         // bit/s/Hz
  double eta_min = 0.01;
  double eta_max = 0.5;
  double epsilon = 1e-4;
  double rate_tolerance = 1e-3;
  double baseline_db = 0.0;  // fixed non-rain attenuation entering gamma_bar

  void validate() const;
  // ceil(log2((eta_max - eta_min) / epsilon)).
  int bisection_iterations() const;
};

enum class Regime { full_sensing, throughput_tracking, outage };
const char* regime_name(Regime r);

struct AllocationResult {
  double eta_star = 0.0;
  Regime regime = Regime::full_sensing;
  double achieved_c = 0.0;
  double bound_rmse = 0.0;
  double mean_snr = 0.0;
  int iterations = 0;
};

// Rain-degraded mean SNR used by the allocator.
double allocation_snr(const LinkModel& model, double rain_rate, const AllocationPolicy& policy);

// BCRB_T RMSE at pilot fraction eta.
double allocation_bound(const LinkModel& model, double rain_rate, double eta, double mean_snr,
                        const RainPrior& prior, int window);

AllocationResult eta_star(const LinkModel& model, double rain_rate, const AllocationPolicy& policy,
                          const RainPrior& prior, int window);

struct RegimeThresholds {
  double r_sat = 0.0;
  double r_out = 0.0;
};

RegimeThresholds regime_thresholds(const LinkModel& model, const AllocationPolicy& policy, double r_max = 300.0);

struct HighSnrEta {
  double eta = 0.0;
  bool below_validity = false;  // gamma_bar < 10
};

HighSnrEta eta_high_snr(double mean_snr, double c_min);

struct BaselinePoint {
  double eta = 0.0;
  double bound_rmse = 0.0;
  double achieved_c = 0.0;
  bool feasible = false;
};

struct SweepRow {
  double rain_rate = 0.0;
  double c_min = 0.0;
  AllocationResult adaptive;
  std::vector<BaselinePoint> baselines;
  // 1 - BCRB_adaptive / BCRB_best_feasible_fixed (variance); NaN if no fixed
  // baseline is feasible.
  double improvement = 0.0;
};

std::vector<SweepRow> allocation_sweep(const LinkModel& model, std::span<const double> rain_rates,
                                       std::span<const double> c_mins, const AllocationPolicy& policy,
                                       const RainPrior& prior, int window, std::span<const double> fixed_etas);

}  // namespace rainbound
