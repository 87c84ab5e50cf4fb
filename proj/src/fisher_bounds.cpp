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

#include "rainbound/fisher_bounds.hpp"

#include <cmath>
#include <limits>

#include "rainbound/errors.hpp"
#include "rainbound/link_model.hpp"
#include "rainbound/link_rate.hpp"
#include "rainbound/optimize.hpp"

namespace rainbound {

double db_noise_constant() {
  const double c = 10.0 / std::log(10.0);
  return c * c;
}

double pilot_noise_variance(double c0, double pilot_count, double snr, double sigma_sys) {
  if (!(pilot_count > 0.0)) throw DomainError("pilot count must be > 0");
  if (!(snr > 0.0)) throw DomainError("SNR must be > 0");
  const double t = 1.0 + 1.0 / snr;
  return c0 / pilot_count * t * t + sigma_sys * sigma_sys;
}

void NoiseModel::validate() const {
  if (fixed_sigma_n) {
    if (!(*fixed_sigma_n > 0.0)) throw DomainError("fixed sigma_n must be > 0");
    return;
  }
  if (!(pilot_count > 0.0) || !(snr > 0.0) || !(c0 > 0.0) || !(sigma_sys >= 0.0))
    throw DomainError("noise model parameters out of range");
}

double NoiseModel::variance() const {
  validate();
  if (fixed_sigma_n) return *fixed_sigma_n * *fixed_sigma_n;
  return pilot_noise_variance(c0, pilot_count, snr, sigma_sys);
}

double NoiseModel::sigma() const { return std::sqrt(variance()); }

void RainPrior::validate() const {
  if (!(mean_rate > 0.0)) throw DomainError("prior mean rate must be > 0");
  if (!(cv > 0.0)) throw DomainError("prior coefficient of variation must be > 0");
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("temporal correlation must lie in [0, 1)");
}

double RainPrior::sigma_ln2() const { return std::log1p(cv * cv); }
double RainPrior::sigma_ln() const { return std::sqrt(sigma_ln2()); }
double RainPrior::mu_ln() const { return std::log(mean_rate) - 0.5 * sigma_ln2(); }
double RainPrior::mode() const { return std::exp(mu_ln() - sigma_ln2()); }

linalg::Matrix fim(const linalg::Matrix& sensitivity, double sigma_n) {
  if (!(sigma_n > 0.0)) throw DomainError("sigma_n must be > 0");
  if (!linalg::all_finite(sensitivity)) throw NumericError("sensitivity matrix has non-finite entries");
  linalg::Matrix j = (1.0 / (sigma_n * sigma_n)) * linalg::gram(sensitivity);
  if (!linalg::all_finite(j)) throw NumericError("Fisher information overflowed");
  return j;
}

double rain_information(std::span<const double> rain_gradient, double sigma_n) {
  if (!(sigma_n > 0.0)) throw DomainError("sigma_n must be > 0");
  return linalg::dot(rain_gradient, rain_gradient) / (sigma_n * sigma_n);
}

double crb_rain_only(const AtmosphericState& state, const FrequencyGrid& grid, const CoefficientTable& coefs,
                     const PathGeometry& geom, double sigma_n) {
  if (!(state.rain_rate > 0.0)) throw DomainError("rain-only CRB requires R > 0");
  const linalg::Matrix g = sensitivity_matrix(state, grid, coefs, geom, param_rain);
  const double j = rain_information(g.column(0), sigma_n);
  if (!(j > 0.0)) throw DomainError("rain information is zero");
  return 1.0 / j;
}

double crb_joint_schur(const linalg::Matrix& j) {
  const std::size_t p = j.rows();
  if (p == 0 || j.cols() != p) throw DomainError("FIM must be square and non-empty");
  if (!(j(0, 0) > 0.0)) throw UnidentifiableError("rain information is zero");
  if (p == 1) return 1.0 / j(0, 0);

  std::vector<std::size_t> nu(p - 1);
  for (std::size_t i = 1; i < p; ++i) nu[i - 1] = i;
  const linalg::Matrix jnn = j.submatrix(nu);
  std::vector<double> jrn(p - 1);
  for (std::size_t i = 1; i < p; ++i) jrn[i - 1] = j(0, i);

  std::vector<double> w;
  try {
    w = linalg::spd_solve(jnn, jrn);
  } catch (const NumericError&) {
    throw UnidentifiableError("nuisance information block is singular");
  }
  const double schur = j(0, 0) - linalg::dot(jrn, w);
  if (!(schur > 0.0)) throw UnidentifiableError("Schur complement is not positive");
  return 1.0 / schur;
}

double condition_number(const linalg::Matrix& j) {
  const auto eig = linalg::symmetric_eigenvalues(j);
  if (eig.empty()) return std::numeric_limits<double>::infinity();
  if (!(eig.front() > 0.0)) return std::numeric_limits<double>::infinity();
  return eig.back() / eig.front();
}

double gradient_coherence(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("gradient vectors differ in length");
  const double na = linalg::norm(a);
  const double nb = linalg::norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw DomainError("coherence of a zero vector");
  return std::min(1.0, std::abs(linalg::dot(a, b)) / (na * nb));
}

double prior_fisher_info(const RainPrior& prior) {
  prior.validate();
  const double s2 = prior.sigma_ln2();
  return (1.0 + 1.0 / s2) / (prior.mean_rate * prior.mean_rate) * std::exp(3.0 * s2);
}

double temporal_gain(double rho, int window) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
  if (window < 1) throw DomainError("window must be >= 1");
  return (1.0 - std::pow(rho, 2.0 * window)) / (1.0 - rho * rho);
}

double temporal_gain_limit(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
  return 1.0 / (1.0 - rho * rho);
}

double t95_exact(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0, 1)");
  return std::log(0.05) / (2.0 * std::log(rho));
}

int t95_window(double rho) { return static_cast<int>(std::ceil(t95_exact(rho))); }

BoundResult bcrb(double data_info, double prior_info, double temporal_gain, double links) {
  if (!(data_info >= 0.0) || !(prior_info >= 0.0) || !(temporal_gain >= 0.0) || !(links >= 0.0))
    throw DomainError("informations must be >= 0");
  const double total = links * temporal_gain * data_info + prior_info;
  if (!(total > 0.0)) throw DomainError("total information is zero");
  BoundResult r;
  r.data_info = data_info;
  r.prior_info = prior_info;
  r.temporal_gain = temporal_gain;
  r.links = links;
  r.variance = 1.0 / total;
  r.rmse = std::sqrt(r.variance);
  return r;
}

double bcrb_crb_ratio(double data_info, double prior_info) {
  if (!(data_info > 0.0)) throw DomainError("data information must be > 0");
  return 1.0 / (1.0 + prior_info / data_info);
}

double rmin_solve(const std::function<double(double)>& variance_of_rate, double lo, double hi, double tol) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("R_min bracket must satisfy 0 < lo < hi");
  const auto excess = [&](double r) { return std::sqrt(variance_of_rate(r)) - r; };
  // The excess can turn positive again at high R when losses grow with R, so
  // bracket the first crossing on a log grid before bisecting.
  constexpr int steps = 240;
  const double ratio = std::pow(hi / lo, 1.0 / steps);
  double a = lo;
  if (!(excess(a) > 0.0)) throw NumericError("R_min lies below the bracket");
  for (int i = 1; i <= steps; ++i) {
    const double b = i == steps ? hi : lo * std::pow(ratio, i);
    if (excess(b) <= 0.0) return bisect_root(excess, a, b, tol);
    a = b;
  }
  throw NumericError("R_min has no solution on the bracket");
}

double rmin_closed_form(double sigma_n, std::size_t subcarriers, P838Coefficients band, double path_km) {
  if (!(sigma_n > 0.0) || subcarriers == 0 || !(band.k > 0.0) || !(band.alpha > 0.0) || !(path_km > 0.0))
    throw DomainError("closed-form R_min needs positive inputs");
  const double den = static_cast<double>(subcarriers) * band.k * band.k * band.alpha * band.alpha * path_km * path_km;
  return std::pow(sigma_n * sigma_n / den, 1.0 / (2.0 * band.alpha));
}

double wideband_gain_ratio(const CoefficientTable& coefs, double rain_rate) {
  if (coefs.size() == 0) throw DomainError("empty coefficient table");
  if (!(rain_rate > 0.0)) throw DomainError("R must be > 0");
  const auto term = [&](std::size_t i) {
    const double t = coefs.k[i] * coefs.alpha[i] * std::pow(rain_rate, coefs.alpha[i] - 1.0);
    return t * t;
  };
  double s = 0.0;
  for (std::size_t i = 0; i < coefs.size(); ++i) s += term(i);
  return s / term(0);
}

std::vector<ParetoPoint> pareto_frontier(const LinkModel& model, double rain_rate, const RainPrior& prior,
                                         int window, std::span<const double> etas) {
  const LinkConfig& cfg = model.config();
  const double snr = mean_snr_under_rain(cfg.snr0(), model.mean_rain_attenuation(rain_rate));
  const double jp = prior_fisher_info(prior);
  const double gt = temporal_gain(prior.rho, window);
  std::vector<ParetoPoint> out;
  out.reserve(etas.size());
  for (double eta : etas) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("pilot fraction must lie in (0, 1)");
    ParetoPoint p;
    p.eta = eta;
    p.spectral_efficiency = spectral_efficiency(eta, cfg.n_sym, snr);
    p.sigma_n = model.sigma_n(eta, snr);
    const double jd = model.data_information(rain_rate, p.sigma_n);
    p.crb_rmse = 1.0 / std::sqrt(jd);
    p.bcrb_rmse = bcrb(jd, jp, gt).rmse;
    out.push_back(p);
  }
  return out;
}

const char* identifiability_label(double kappa) {
  if (kappa < 1e3) return "identifiable";
  if (kappa < 1e4) return "marginal";
  return "unidentifiable";
}

std::vector<IdentifiabilityRow> identifiability_table(const AtmosphericState& state, const FrequencyGrid& grid,
                                                      const CoefficientTable& coefs, const PathGeometry& geom,
                                                      double sigma_n) {
  static constexpr unsigned masks[] = {
      param_rain,
      param_rain | param_offset,
      param_rain | param_water_vapor,
      param_rain | param_cloud,
      param_rain | param_water_vapor | param_cloud,
      param_all,
  };
  const linalg::Matrix g = sensitivity_matrix(state, grid, coefs, geom, param_all);
  const linalg::Matrix j = fim(g, sigma_n);
  const double crb0 = 1.0 / j(0, 0);
  std::vector<IdentifiabilityRow> rows;
  for (unsigned m : masks) {
    const auto idx = mask_indices(m);
    const linalg::Matrix sub = j.submatrix(idx);
    IdentifiabilityRow r;
    r.mask = m;
    r.kappa = condition_number(sub);
    r.identifiable = r.kappa < 1e3;
    try {
      const double c = crb_joint_schur(sub);
      r.relative_crb = std::sqrt(c / crb0);
      r.excess = c / crb0 - 1.0;
    } catch (const UnidentifiableError&) {
      r.relative_crb = std::numeric_limits<double>::infinity();
      r.excess = std::numeric_limits<double>::infinity();
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace rainbound
