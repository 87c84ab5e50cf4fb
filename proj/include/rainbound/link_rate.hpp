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

namespace rainbound {

// gamma_bar = gamma0 * 10^(-A/10).
double mean_snr_under_rain(double snr0, double attenuation_db);

// Pilot-aided channel estimate MSE, 1 / (eta N_sym gamma_bar).
double csi_mse(double eta, double n_sym, double mean_snr);

// (1 - eta) log2(1 + gamma^2 eta N / (1 + gamma eta N)), bit/s/Hz.
double spectral_efficiency(double eta, double n_sym, double mean_snr);

// (sqrt(1 + gamma0 N) - 1) / (gamma0 N).
double throughput_optimal_eta(double snr0, double n_sym);

// Golden-section maximizer of spectral_efficiency over (0, 1); used as a check
// on the closed form above, which maximizes a slightly different surrogate.
double spectral_efficiency_argmax(double n_sym, double mean_snr, double tol = 1e-10);

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace rainbound
