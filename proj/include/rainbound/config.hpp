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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rainbound/fisher_bounds.hpp"
#include "rainbound/link_model.hpp"
#include "rainbound/montecarlo.hpp"
#include "rainbound/pilot_alloc.hpp"

namespace rainbound {

struct DetectSettings {
  double design_rate = 5.0;  // mm/h
  double p_fa = 1e-3;
  std::size_t arl_runs = 500;
  std::size_t max_steps = 100000;
};

struct ExperimentSettings {
  RngSpec rng;
  NoiseMode noise_mode = NoiseMode::db_gaussian;
  std::size_t estimator_trials = 10000;
  std::size_t cusum_trials = 5000;
  std::size_t score_draws = 1000000;
  std::size_t fusion_links = 215;
  std::size_t fusion_trials = 300;
  int window = 30;  // minutes of temporal pooling for allocation and scaling
  std::string out_dir = "out";
};

struct SweepSettings {
  std::vector<double> rain_rates;
  std::vector<int> windows{1, 10, 30};
  double reference_rate = 20.0;
  std::size_t sideinfo_subcarriers = 20;
  std::vector<double> pareto_etas;
  std::vector<double> elevations;
  std::vector<double> locus_rates;
  std::vector<double> c_mins{0.5, 1.0, 1.5};
  std::vector<double> fixed_etas{0.05, 0.1, 0.2};
  std::vector<double> alloc_rates;
  std::vector<double> detect_rates{5, 10, 15, 20, 30, 50};
  std::vector<double> detect_windows{5, 10, 30};
  std::vector<double> estimate_rates{2, 5, 20, 50};
  std::vector<double> link_counts{1, 10, 20, 50, 100, 215};
};

struct RunConfig {
  LinkConfig link;
  RainPrior prior;
  AllocationPolicy policy;
  DetectSettings detect;
  ExperimentSettings experiment;
  SweepSettings sweep;

  RunConfig();
  // Throws ConfigError.
  void validate() const;
};

// INI text: [section] headers, key = value, '#' comments, comma lists.
// Unknown sections or keys are errors. The result is validated.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::string serialize_config(const RunConfig& cfg);

// Sets "section.key" from its text form; no validation beyond the value type.
void set_option(RunConfig& cfg, std::string_view dotted_key, std::string_view value);
std::string get_option(const RunConfig& cfg, std::string_view dotted_key);
std::vector<std::string> option_keys();

std::uint64_t fnv1a64(std::string_view bytes);
std::string config_hash(const RunConfig& cfg);

}  // namespace rainbound
