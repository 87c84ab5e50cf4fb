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

#include "rainbound/itu_atmos.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rainbound/errors.hpp"
#include "rainbound/text.hpp"

namespace rainbound {

namespace {

template <std::size_t N>
struct Regression {
  std::array<double, N> a;
  std::array<double, N> b;
  std::array<double, N> c;
  double m;
  double offset;

  double operator()(double log_f) const {
    double s = m * log_f + offset;
    for (std::size_t j = 0; j < N; ++j) {
      const double z = (log_f - b[j]) / c[j];
      s += a[j] * std::exp(-z * z);
    }
    return s;
  }
};

constexpr Regression<4> k_h{{-5.33980, -0.35351, -0.23789, -0.94158},
                            {-0.10008, 1.26970, 0.86036, 0.64552},
                            {1.13098, 0.45400, 0.15354, 0.16817},
                            -0.18961,
                            0.71147};
constexpr Regression<4> k_v{{-3.80595, -3.44965, -0.39902, 0.50167},
                            {0.56934, -0.22911, 0.73042, 1.07319},
                            {0.81061, 0.51059, 0.11899, 0.27195},
                            -0.16398,
                            0.63297};
constexpr Regression<5> alpha_h{{-0.14318, 0.29591, 0.32177, -5.37610, 16.1721},
                                {1.82442, 0.77564, 0.63773, -0.96230, -3.29980},
                                {-0.55187, 0.19822, 0.13164, 1.47828, 3.43990},
                                0.67849,
                                -1.95537};
constexpr Regression<5> alpha_v{{-0.07771, 0.56727, -0.20238, -48.2991, 48.5833},
                                {2.33840, 0.95545, 1.14520, 0.791669, 0.791459},
                                {-0.76284, 0.54039, 0.26809, 0.116226, 0.116479},
                                -0.053739,
                                0.83433};

constexpr double deg = std::numbers::pi / 180.0;

void check_frequency(double f, double lo, double hi) {
  if (!(f >= lo && f <= hi))
    throw DomainError("frequency " + std::to_string(f) + " GHz outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
}

void check_rain(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rain rate must be finite and >= 0");
}

}  // namespace

P838Coefficients p838_coefficients(double f_ghz, Polarization pol) {
  check_frequency(f_ghz, 1.0, 100.0);
  const double lf = std::log10(f_ghz);
  if (pol == Polarization::horizontal) return {std::pow(10.0, k_h(lf)), alpha_h(lf)};
  return {std::pow(10.0, k_v(lf)), alpha_v(lf)};
}

FrequencyGrid::FrequencyGrid(std::vector<double> frequencies_ghz, Polarization pol)
    : freqs_(std::move(frequencies_ghz)), pol_(pol) {
  if (freqs_.empty()) throw DomainError("frequency grid is empty");
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    check_frequency(freqs_[i], 1.0, 100.0);
    if (i > 0 && !(freqs_[i] > freqs_[i - 1])) throw DomainError("frequency grid must be strictly increasing");
  }
}

FrequencyGrid FrequencyGrid::uniform(double lo_ghz, double hi_ghz, std::size_t count, Polarization pol) {
  if (count == 0) throw DomainError("frequency grid needs at least one subcarrier");
  if (count == 1) return FrequencyGrid({0.5 * (lo_ghz + hi_ghz)}, pol);
  std::vector<double> f(count);
  const double step = (hi_ghz - lo_ghz) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) f[i] = lo_ghz + step * static_cast<double>(i);
  f.back() = hi_ghz;
  return FrequencyGrid(std::move(f), pol);
}

P838Coefficients CoefficientTable::mean() const {
  P838Coefficients m;
  for (std::size_t i = 0; i < k.size(); ++i) {
    m.k += k[i];
    m.alpha += alpha[i];
  }
  m.k /= static_cast<double>(k.size());
  m.alpha /= static_cast<double>(alpha.size());
  return m;
}

CoefficientTable make_coefficients(const FrequencyGrid& grid, CoefficientMode mode, P838Coefficients band) {
  CoefficientTable t;
  t.mode = mode;
  t.k.resize(grid.size());
  t.alpha.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const P838Coefficients c =
        mode == CoefficientMode::band_average ? band : p838_coefficients(grid[i], grid.polarization());
    t.k[i] = c.k;
    t.alpha[i] = c.alpha;
  }
  return t;
}

CoefficientTable load_coefficient_file(const std::string& path, const FrequencyGrid& grid) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open coefficient file");
  std::vector<std::array<double, 3>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = text::trim(text::strip_comment(line));
    if (body.empty()) continue;
    const auto fields = text::split(body, ',');
    if (fields.size() != 3) throw ParseError(line_no, "expected f_GHz,k,alpha");
    std::array<double, 3> r{};
    for (std::size_t j = 0; j < 3; ++j) {
      const auto v = text::parse_double(fields[j]);
      if (!v) throw ParseError(line_no, "not a number: '" + text::trim(fields[j]) + "'");
      r[j] = *v;
    }
    if (!(r[1] > 0.0) || !(r[2] > 0.5 && r[2] < 2.0)) throw ParseError(line_no, "k must be > 0, alpha in (0.5, 2)");
    if (!rows.empty() && !(r[0] > rows.back()[0])) throw ParseError(line_no, "frequencies must increase");
    rows.push_back(r);
  }
  if (rows.empty()) throw ConfigError(path + ": no coefficient rows");

  CoefficientTable t;
  t.mode = CoefficientMode::per_subcarrier;
  for (double f : grid.frequencies()) {
    if (f < rows.front()[0] || f > rows.back()[0])
      throw ConfigError(path + ": grid frequency " + std::to_string(f) + " GHz not covered");
    auto hi = std::lower_bound(rows.begin(), rows.end(), f, [](const auto& r, double x) { return r[0] < x; });
    if ((*hi)[0] == f) {
      t.k.push_back((*hi)[1]);
      t.alpha.push_back((*hi)[2]);
      continue;
    }
    const auto lo = hi - 1;
    const double w = (f - (*lo)[0]) / ((*hi)[0] - (*lo)[0]);
    t.k.push_back((1.0 - w) * (*lo)[1] + w * (*hi)[1]);
    t.alpha.push_back((1.0 - w) * (*lo)[2] + w * (*hi)[2]);
  }
  return t;
}

void AtmosphericState::validate() const {
  if (!(rain_rate >= 0.0) || !std::isfinite(rain_rate)) throw DomainError("rain rate must be >= 0");
  if (!(water_vapor >= 0.0) || !std::isfinite(water_vapor)) throw DomainError("water vapour density must be >= 0");
  if (!(cloud_lwc >= 0.0) || !std::isfinite(cloud_lwc)) throw DomainError("cloud liquid water must be >= 0");
  if (!std::isfinite(offset)) throw DomainError("offset must be finite");
}

void PathGeometry::validate() const {
  if (!(elevation_deg >= 5.0 && elevation_deg <= 90.0)) throw DomainError("elevation must lie in [5, 90] deg");
  if (!(base_elevation_deg > 0.0 && base_elevation_deg <= 90.0)) throw DomainError("base elevation must lie in (0, 90] deg");
  if (!(rain_height_km > 0.0)) throw DomainError("rain height must be > 0");
  if (!(base_rain_path_km > 0.0)) throw DomainError("base rain path must be > 0");
  if (!(gas_path_km >= 0.0) || !(cloud_path_km >= 0.0)) throw DomainError("gas and cloud paths must be >= 0");
}

PathGeometry PathGeometry::at_elevation(double elevation) const {
  PathGeometry g = *this;
  g.elevation_deg = elevation;
  return g;
}

double specific_rain_attenuation(P838Coefficients c, double rain_rate) {
  check_rain(rain_rate);
  if (rain_rate == 0.0) return 0.0;
  return c.k * std::pow(rain_rate, c.alpha);
}

double specific_rain_attenuation(double f_ghz, double rain_rate, Polarization pol) {
  return specific_rain_attenuation(p838_coefficients(f_ghz, pol), rain_rate);
}

namespace {

void check_elevation(double el) {
  if (!(el > 0.0 && el <= 90.0)) throw DomainError("elevation must lie in (0, 90] deg");
}

double horizontal_projection(const PathGeometry& geom) {
  return slant_path(geom) * std::cos(geom.elevation_deg * deg);
}

}  // namespace

double slant_path(const PathGeometry& geom) {
  check_elevation(geom.elevation_deg);
  return geom.rain_height_km / std::sin(geom.elevation_deg * deg);
}

double p618_reduction_factor(const PathGeometry& geom, double gamma_r, double f_ghz) {
  if (!(gamma_r >= 0.0)) throw DomainError("specific attenuation must be >= 0");
  const double lg = horizontal_projection(geom);
  return 1.0 / (1.0 + 0.78 * std::sqrt(lg * gamma_r / f_ghz) - 0.38 * (1.0 - std::exp(-2.0 * lg)));
}

double p618_effective_path(const PathGeometry& geom, double gamma_r, double f_ghz) {
  return slant_path(geom) * p618_reduction_factor(geom, gamma_r, f_ghz);
}

double anchored_effective_path(const PathGeometry& geom) {
  check_elevation(geom.elevation_deg);
  check_elevation(geom.base_elevation_deg);
  return geom.base_rain_path_km * std::sin(geom.base_elevation_deg * deg) / std::sin(geom.elevation_deg * deg);
}

double effective_path(const PathGeometry& geom, double gamma_r, double f_ghz) {
  return geom.mode == PathMode::anchored ? anchored_effective_path(geom) : p618_effective_path(geom, gamma_r, f_ghz);
}

namespace {

struct VapourLine {
  double width;  // eta_1
  double shape;  // line + continuum bracket
  double dshape_dwidth;
};

VapourLine vapour_line(double f, double rho) {
  const double eta1 = 0.955 + 0.006 * rho;
  const double d = f - 22.235;
  const double g = 1.0 + std::pow((f - 22.0) / (f + 22.0), 2);
  const double den = d * d + 9.42 * eta1 * eta1;
  return {eta1, 3.98 * g / den + 0.06, -3.98 * g * 18.84 * eta1 / (den * den)};
}

void check_gas_inputs(double f, double rho) {
  check_frequency(f, 1.0, 50.0);
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("water vapour density must be >= 0");
}

}  // namespace

double gas_specific_attenuation(double f_ghz, double water_vapor) {
  check_gas_inputs(f_ghz, water_vapor);
  const double f2 = f_ghz * f_ghz;
  const double oxygen = (7.2 / (f2 + 0.34) + 0.62 / (std::pow(54.0 - f_ghz, 1.16) + 0.83)) * f2 * 1e-3;
  const VapourLine v = vapour_line(f_ghz, water_vapor);
  return oxygen + water_vapor * v.width * v.shape * f2 * 1e-4;
}

double gas_specific_attenuation_dwv(double f_ghz, double water_vapor) {
  check_gas_inputs(f_ghz, water_vapor);
  const VapourLine v = vapour_line(f_ghz, water_vapor);
  const double f2 = f_ghz * f_ghz;
  return (v.width * v.shape + water_vapor * 0.006 * (v.shape + v.width * v.dshape_dwidth)) * f2 * 1e-4;
}

double cloud_coefficient(double f_ghz) {
  check_frequency(f_ghz, 1.0, 100.0);
  const double theta = 300.0 / 273.15;
  const double eps0 = 77.66 + 103.3 * (theta - 1.0);
  const double eps1 = 5.48;
  const double fp = 20.20 - 146.0 * (theta - 1.0) + 316.0 * (theta - 1.0) * (theta - 1.0);
  const double x = f_ghz / fp;
  const double eps_im = x * (eps0 - eps1) / (1.0 + x * x);
  const double eps_re = (eps0 - eps1) / (1.0 + x * x) + eps1;
  const double eta = (2.0 + eps_re) / eps_im;
  return 0.819 * f_ghz / (eps_im * (1.0 + eta * eta));
}

AttenuationTerms attenuation_terms(double f_ghz, P838Coefficients c, const AtmosphericState& state,
                                   const PathGeometry& geom) {
  state.validate();
  const double gamma_r = specific_rain_attenuation(c, state.rain_rate);
  AttenuationTerms t;
  t.rain = gamma_r * effective_path(geom, gamma_r, f_ghz);
  t.gas = gas_specific_attenuation(f_ghz, state.water_vapor) * geom.gas_path_km;
  t.cloud = cloud_coefficient(f_ghz) * state.cloud_lwc * geom.cloud_path_km;
  t.offset = state.offset;
  return t;
}

double total_attenuation(double f_ghz, P838Coefficients c, const AtmosphericState& state, const PathGeometry& geom) {
  return attenuation_terms(f_ghz, c, state, geom).total();
}

std::vector<double> attenuation_vector(const AtmosphericState& state, const FrequencyGrid& grid,
                                       const CoefficientTable& coefs, const PathGeometry& geom) {
  std::vector<double> a(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) a[i] = total_attenuation(grid[i], coefs.at(i), state, geom);
  return a;
}

std::vector<std::size_t> mask_indices(unsigned mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < 4; ++i)
    if (mask & (1u << i)) idx.push_back(i);
  return idx;
}

std::string mask_label(unsigned mask) {
  static const char* names[] = {"R", "rho_wv", "M_c", "G"};
  std::string s;
  for (std::size_t i : mask_indices(mask)) {
    if (!s.empty()) s += '+';
    s += names[i];
  }
  return s;
}

double rain_gradient(double f_ghz, P838Coefficients c, double rain_rate, const PathGeometry& geom) {
  check_rain(rain_rate);
  if (rain_rate == 0.0) {
    if (c.alpha > 1.0) return 0.0;
    throw DomainError("rain gradient is singular at R = 0 for alpha <= 1");
  }
  const double slope = c.k * c.alpha * std::pow(rain_rate, c.alpha - 1.0);
  if (geom.mode == PathMode::anchored) return slope * anchored_effective_path(geom);
  // d/dR [gamma * L_s * r(gamma)] = slope * L_s * (r + gamma dr/dgamma),
  // with gamma dr/dgamma = -r^2 * 0.39 sqrt(L_G gamma / f).
  const double gamma_r = c.k * std::pow(rain_rate, c.alpha);
  const double r = p618_reduction_factor(geom, gamma_r, f_ghz);
  const double lg = horizontal_projection(geom);
  const double gamma_dr = -r * r * 0.39 * std::sqrt(lg * gamma_r / f_ghz);
  return slope * slant_path(geom) * (r + gamma_dr);
}

linalg::Matrix sensitivity_matrix(const AtmosphericState& state, const FrequencyGrid& grid,
                                  const CoefficientTable& coefs, const PathGeometry& geom, unsigned mask) {
  const auto idx = mask_indices(mask & param_all);
  if (idx.empty()) throw DomainError("empty parameter mask");
  state.validate();
  if ((mask & param_rain) && state.rain_rate < 1e-6) {
    bool all_convex = true;
    for (double a : coefs.alpha) all_convex = all_convex && a > 1.0;
    if (!(coefs.mode == CoefficientMode::band_average && all_convex && state.rain_rate == 0.0))
      throw DomainError("rain column requires R >= 1e-6 mm/h");
  }
  linalg::Matrix g(grid.size(), idx.size());
  for (std::size_t row = 0; row < grid.size(); ++row) {
    const double f = grid[row];
    for (std::size_t col = 0; col < idx.size(); ++col) {
      double v = 0.0;
      switch (idx[col]) {
        case 0: v = rain_gradient(f, coefs.at(row), state.rain_rate, geom); break;
        case 1: v = gas_specific_attenuation_dwv(f, state.water_vapor) * geom.gas_path_km; break;
        case 2: v = cloud_coefficient(f) * geom.cloud_path_km; break;
        default: v = 1.0; break;
      }
      g(row, col) = v;
    }
  }
  return g;
}

}  // namespace rainbound
