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
#include <vector>

#include "rainbound/fisher_bounds.hpp"
#include "rainbound/itu_atmos.hpp"

namespace rainbound {

struct EstimatorReport {
  double estimate = 0.0;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  double initializer = 0.0;
  bool init_floored = false;
  std::vector<double> objective_trace;  // initial value, then one entry per accepted step
};

// Observation model for one snapshot: A_k = k_k R^alpha_k L + c_k + noise.
struct EstimationProblem {
  std::vector<double> observed;  // dB
  std::vector<double> k;
  std::vector<double> alpha;
  std::vector<double> nuisance;  // c_k, dB
  double path_km = 3.0;
  double sigma_n = 1.0;
  P838Coefficients centre{0.022, 1.19};

  void validate() const;
};

inline constexpr double mle_init_floor = 0.1;

struct InitResult {
  double rate = 0.0;
  bool floored = false;
};

// (A_bar / (k_c L))^(1/alpha_c) with A_bar the mean of observed - c_k.
InitResult mle_init(std::span<const double> observed, std::span<const double> nuisance, P838Coefficients centre,
                    double path_km);

// Newton in x = ln R (Gauss-Newton curvature where the exact one is not
// positive) with backtracking. At most 25 iterations.
EstimatorReport mle_newton(const EstimationProblem& problem);
EstimatorReport map_newton(const EstimationProblem& problem, const RainPrior& prior);

// sum J_n R_n / sum J_n.
double fuse_estimates(std::span<const double> estimates, std::span<const double> informations);

}  // namespace rainbound
