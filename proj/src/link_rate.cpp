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

#include "rainbound/link_rate.hpp"

#include <cmath>

#include "rainbound/errors.hpp"
#include "rainbound/optimize.hpp"

namespace rainbound {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double mean_snr_under_rain(double snr0, double attenuation_db) {
  if (!(snr0 > 0.0)) throw DomainError("clear-sky SNR must be > 0");
  return snr0 * std::pow(10.0, -attenuation_db / 10.0);
}

double csi_mse(double eta, double n_sym, double mean_snr) {
  if (!(eta * n_sym >= 1.0)) throw DomainError("at least one pilot symbol required");
  return 1.0 / (eta * n_sym * mean_snr);
}

double spectral_efficiency(double eta, double n_sym, double mean_snr) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("pilot fraction must lie in (0, 1)");
  const double gn = mean_snr * eta * n_sym;
  return (1.0 - eta) * std::log2(1.0 + mean_snr * gn / (1.0 + gn));
}

double throughput_optimal_eta(double snr0, double n_sym) {
  const double g = snr0 * n_sym;
  if (!(g > 0.0)) throw DomainError("gamma0 * N_sym must be > 0");
  return (std::sqrt(1.0 + g) - 1.0) / g;
}

double spectral_efficiency_argmax(double n_sym, double mean_snr, double tol) {
  return golden_section_min([&](double eta) { return -spectral_efficiency(eta, n_sym, mean_snr); }, 1e-9,
                            1.0 - 1e-9, tol);
}

}  // namespace rainbound
