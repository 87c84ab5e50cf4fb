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

#include <functional>

namespace rainbound {

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
// Throws NumericError otherwise.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter = 200);

// Minimizer of a unimodal f on [lo, hi] to within tol.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol);

// Grid scan at `step` followed by golden-section refinement around the best
// grid point. Endpoints are returned exactly when they win.
double scan_min(const std::function<double(double)>& f, double lo, double hi, double step, double tol);

}  // namespace rainbound
