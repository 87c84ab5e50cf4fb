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

#include "rainbound/rainbound.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "rainbound/commands.hpp"
#include "rainbound/config.hpp"
#include "rainbound/errors.hpp"
#include "rainbound/fisher_bounds.hpp"
#include "rainbound/link_model.hpp"
#include "rainbound/pilot_alloc.hpp"
#include "rainbound/rain_detect.hpp"
#include "rainbound/rain_estimate.hpp"

struct rb_context {
  rainbound::RunConfig config;
  std::string error;
};

namespace {

using namespace rainbound;

rb_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return RB_ERR_CONFIG;
    case ErrorKind::numeric: return RB_ERR_NUMERIC;
    case ErrorKind::io: return RB_ERR_IO;
    case ErrorKind::parse: return RB_ERR_PARSE;
    case ErrorKind::domain: return RB_ERR_DOMAIN;
    case ErrorKind::unidentifiable: return RB_ERR_UNIDENTIFIABLE;
    case ErrorKind::undetectable: return RB_ERR_UNDETECTABLE;
  }
  return RB_ERR_INTERNAL;
}

template <class F>
rb_status guarded(rb_context* ctx, F&& f) {
  if (!ctx) return RB_ERR_ARGUMENT;
  try {
    ctx->error.clear();
    return f();
  } catch (const Error& e) {
    ctx->error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return RB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return RB_ERR_INTERNAL;
  }
}

rb_status fail(rb_context* ctx, rb_status s, const char* what) {
  ctx->error = what;
  return s;
}

rb_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) return RB_ERR_BUFFER;
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return RB_OK;
}

LinkModel model_of(const rb_context* ctx) {
  ctx->config.validate();
  return LinkModel(ctx->config.link);
}

}  // namespace

extern "C" {

const char* rb_version(void) { return RAINBOUND_VERSION; }

const char* rb_status_string(rb_status status) {
  switch (status) {
    case RB_OK: return "ok";
    case RB_ERR_ARGUMENT: return "invalid argument";
    case RB_ERR_CONFIG: return "configuration error";
    case RB_ERR_NUMERIC: return "numeric error";
    case RB_ERR_IO: return "I/O error";
    case RB_ERR_PARSE: return "parse error";
    case RB_ERR_DOMAIN: return "domain error";
    case RB_ERR_UNIDENTIFIABLE: return "parameters not identifiable";
    case RB_ERR_UNDETECTABLE: return "rain rate not detectable";
    case RB_ERR_BUFFER: return "buffer too small";
    case RB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

rb_status rb_context_create(rb_context** out) {
  if (!out) return RB_ERR_ARGUMENT;
  *out = new (std::nothrow) rb_context();
  return *out ? RB_OK : RB_ERR_INTERNAL;
}

void rb_context_destroy(rb_context* ctx) { delete ctx; }

const char* rb_last_error(const rb_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

rb_status rb_load_config(rb_context* ctx, const char* path) {
  return guarded(ctx, [&] {
    if (!path) return fail(ctx, RB_ERR_ARGUMENT, "path is null");
    ctx->config = load_config(path);
    return RB_OK;
  });
}

rb_status rb_load_config_string(rb_context* ctx, const char* text) {
  return guarded(ctx, [&] {
    if (!text) return fail(ctx, RB_ERR_ARGUMENT, "text is null");
    ctx->config = parse_config(text);
    return RB_OK;
  });
}

rb_status rb_set_option(rb_context* ctx, const char* key, const char* value) {
  return guarded(ctx, [&] {
    if (!key || !value) return fail(ctx, RB_ERR_ARGUMENT, "key or value is null");
    set_option(ctx->config, key, value);
    return RB_OK;
  });
}

rb_status rb_get_option(const rb_context* ctx, const char* key, char* buf, size_t cap, size_t* needed) {
  auto* c = const_cast<rb_context*>(ctx);
  return guarded(c, [&] {
    if (!key) return fail(c, RB_ERR_ARGUMENT, "key is null");
    return copy_out(get_option(ctx->config, key), buf, cap, needed);
  });
}

rb_status rb_config_text(const rb_context* ctx, char* buf, size_t cap, size_t* needed) {
  auto* c = const_cast<rb_context*>(ctx);
  return guarded(c, [&] { return copy_out(serialize_config(ctx->config), buf, cap, needed); });
}

rb_status rb_set_seed(rb_context* ctx, uint64_t seed) {
  return guarded(ctx, [&] {
    ctx->config.experiment.rng.seed = seed;
    return RB_OK;
  });
}

rb_status rb_set_coefficient_mode(rb_context* ctx, rb_coefficient_mode mode) {
  return guarded(ctx, [&] {
    if (mode != RB_COEF_FULL_P838 && mode != RB_COEF_BAND_AVERAGE) return fail(ctx, RB_ERR_ARGUMENT, "unknown mode");
    ctx->config.link.coefficient_mode =
        mode == RB_COEF_FULL_P838 ? CoefficientMode::per_subcarrier : CoefficientMode::band_average;
    return RB_OK;
  });
}

rb_status rb_set_noise_mode(rb_context* ctx, rb_noise_mode mode) {
  return guarded(ctx, [&] {
    if (mode != RB_NOISE_DB && mode != RB_NOISE_CHI2) return fail(ctx, RB_ERR_ARGUMENT, "unknown mode");
    ctx->config.experiment.noise_mode = mode == RB_NOISE_DB ? NoiseMode::db_gaussian : NoiseMode::chi_squared_pilot;
    return RB_OK;
  });
}

rb_status rb_run(rb_context* ctx, const char* command, const char* out_dir, const char* series_path) {
  return guarded(ctx, [&] {
    if (!command || !out_dir) return fail(ctx, RB_ERR_ARGUMENT, "command or out_dir is null");
    if (!is_command(command)) return fail(ctx, RB_ERR_ARGUMENT, "unknown command");
    run_command(ctx->config, {command, out_dir, series_path ? series_path : ""});
    return RB_OK;
  });
}

rb_status rb_crb_rmse(rb_context* ctx, double rain_rate, double* out) {
  return guarded(ctx, [&] {
    if (!out) return fail(ctx, RB_ERR_ARGUMENT, "out is null");
    *out = 1.0 / std::sqrt(model_of(ctx).data_information(rain_rate));
    return RB_OK;
  });
}

rb_status rb_bcrb_rmse(rb_context* ctx, double rain_rate, int window, double* out) {
  return guarded(ctx, [&] {
    if (!out) return fail(ctx, RB_ERR_ARGUMENT, "out is null");
    const LinkModel m = model_of(ctx);
    const RainPrior& p = ctx->config.prior;
    *out = bcrb(m.data_information(rain_rate), prior_fisher_info(p), temporal_gain(p.rho, window)).rmse;
    return RB_OK;
  });
}

rb_status rb_rmin(rb_context* ctx, int window, double* out) {
  return guarded(ctx, [&] {
    if (!out) return fail(ctx, RB_ERR_ARGUMENT, "out is null");
    if (window < 0) return fail(ctx, RB_ERR_ARGUMENT, "window must be >= 0");
    const LinkModel m = model_of(ctx);
    const RainPrior& p = ctx->config.prior;
    if (window == 0) {
      *out = rmin_solve([&](double r) { return 1.0 / m.data_information(r); });
    } else {
      const double jp = prior_fisher_info(p);
      const double gt = temporal_gain(p.rho, window);
      *out = rmin_solve([&](double r) { return bcrb(m.data_information(r), jp, gt).variance; });
    }
    return RB_OK;
  });
}

rb_status rb_prior_information(rb_context* ctx, double* out) {
  return guarded(ctx, [&] {
    if (!out) return fail(ctx, RB_ERR_ARGUMENT, "out is null");
    *out = prior_fisher_info(ctx->config.prior);
    return RB_OK;
  });
}

rb_status rb_eta_star(rb_context* ctx, double rain_rate, double* eta, rb_regime* regime) {
  return guarded(ctx, [&] {
    if (!eta) return fail(ctx, RB_ERR_ARGUMENT, "eta is null");
    const auto r = eta_star(model_of(ctx), rain_rate, ctx->config.policy, ctx->config.prior,
                            ctx->config.experiment.window);
    *eta = r.eta_star;
    if (regime) {
      *regime = r.regime == Regime::full_sensing         ? RB_REGIME_FULL_SENSING
                : r.regime == Regime::throughput_tracking ? RB_REGIME_TRACKING
                                                          : RB_REGIME_OUTAGE;
    }
    return RB_OK;
  });
}

rb_status rb_add_wald(rb_context* ctx, double rain_rate, double* minutes) {
  return guarded(ctx, [&] {
    if (!minutes) return fail(ctx, RB_ERR_ARGUMENT, "minutes is null");
    const LinkModel m = model_of(ctx);
    const RunConfig& c = ctx->config;
    const auto cc = make_cusum_config(c.detect.design_rate, c.link.band, m.rain_path(), c.link.sigma_n_db, c.detect.p_fa);
    *minutes = add_wald(rain_rate, cc);
    return RB_OK;
  });
}

rb_status rb_estimate_mle(rb_context* ctx, const double* observed, size_t count, double* estimate, int* converged) {
  return guarded(ctx, [&] {
    if (!observed || !estimate) return fail(ctx, RB_ERR_ARGUMENT, "observed or estimate is null");
    const LinkModel m = model_of(ctx);
    if (count != m.subcarriers()) return fail(ctx, RB_ERR_ARGUMENT, "observation count differs from subcarriers");
    EstimationProblem p;
    p.observed.assign(observed, observed + count);
    p.k = m.coefficients().k;
    p.alpha = m.coefficients().alpha;
    p.nuisance = m.nuisance_attenuation();
    p.path_km = m.rain_path();
    p.sigma_n = ctx->config.link.sigma_n_db;
    p.centre = m.centre_stats();
    const auto rep = mle_newton(p);
    *estimate = rep.estimate;
    if (converged) *converged = rep.converged ? 1 : 0;
    return RB_OK;
  });
}

}  // extern "C"
