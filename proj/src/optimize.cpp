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

#include "rainbound/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "rainbound/errors.hpp"

namespace rainbound {

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericError("no sign change on bracket");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double scan_min(const std::function<double(double)>& f, double lo, double hi, double step, double tol) {
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / step)));
  const double h = (hi - lo) / n;
  int best = 0;
  double fbest = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double v = f(i == n ? hi : lo + h * i);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  const double a = std::max(lo, lo + h * (best - 1));
  const double b = std::min(hi, lo + h * (best + 1));
  const double x = golden_section_min(f, a, b, tol);
  const double fx = f(x);
  if (best == 0 && fbest <= fx) return lo;
  if (best == n && fbest <= fx) return hi;
  return fx < fbest ? x : (best == n ? hi : lo + h * best);
}

}  // namespace rainbound
