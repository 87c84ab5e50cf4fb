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

#ifndef RAINBOUND_RAINBOUND_H
#define RAINBOUND_RAINBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RAINBOUND_BUILDING)
#define RB_API __declspec(dllexport)
#else
#define RB_API __declspec(dllimport)
#endif
#else
#define RB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rb_context rb_context;

typedef enum rb_status {
  RB_OK = 0,
  RB_ERR_ARGUMENT = 1,  /* null pointer, unknown command or option */
  RB_ERR_CONFIG = 2,
  RB_ERR_NUMERIC = 3,
  RB_ERR_IO = 4,
  RB_ERR_PARSE = 5,
  RB_ERR_DOMAIN = 6,
  RB_ERR_UNIDENTIFIABLE = 7,
  RB_ERR_UNDETECTABLE = 8,
  RB_ERR_BUFFER = 9,    /* output buffer too small; *needed holds the size */
  RB_ERR_INTERNAL = 10
} rb_status;

typedef enum rb_coefficient_mode { RB_COEF_FULL_P838 = 0, RB_COEF_BAND_AVERAGE = 1 } rb_coefficient_mode;

typedef enum rb_noise_mode { RB_NOISE_DB = 0, RB_NOISE_CHI2 = 1 } rb_noise_mode;

typedef enum rb_regime { RB_REGIME_FULL_SENSING = 0, RB_REGIME_TRACKING = 1, RB_REGIME_OUTAGE = 2 } rb_regime;

RB_API const char* rb_version(void);
RB_API const char* rb_status_string(rb_status status);

/* A new context holds the default configuration. */
RB_API rb_status rb_context_create(rb_context** out);
RB_API void rb_context_destroy(rb_context* ctx);
/* Message for the last failing call on ctx; empty after success. */
RB_API const char* rb_last_error(const rb_context* ctx);

RB_API rb_status rb_load_config(rb_context* ctx, const char* path);
RB_API rb_status rb_load_config_string(rb_context* ctx, const char* text);
/* key is "section.key", e.g. "link.snr0_db". */
RB_API rb_status rb_set_option(rb_context* ctx, const char* key, const char* value);
RB_API rb_status rb_get_option(const rb_context* ctx, const char* key, char* buf, size_t cap, size_t* needed);
/* Serialized configuration, NUL-terminated. */
RB_API rb_status rb_config_text(const rb_context* ctx, char* buf, size_t cap, size_t* needed);
RB_API rb_status rb_set_seed(rb_context* ctx, uint64_t seed);
RB_API rb_status rb_set_coefficient_mode(rb_context* ctx, rb_coefficient_mode mode);
RB_API rb_status rb_set_noise_mode(rb_context* ctx, rb_noise_mode mode);

/* command: bounds | geometry | alloc | detect | estimate | mc.
   series_path may be NULL. */
RB_API rb_status rb_run(rb_context* ctx, const char* command, const char* out_dir, const char* series_path);

/* Numeric entry points on the context's configuration. Rates in mm/h. */
RB_API rb_status rb_crb_rmse(rb_context* ctx, double rain_rate, double* out);
RB_API rb_status rb_bcrb_rmse(rb_context* ctx, double rain_rate, int window, double* out);
/* window 0 selects the CRB. */
RB_API rb_status rb_rmin(rb_context* ctx, int window, double* out);
RB_API rb_status rb_prior_information(rb_context* ctx, double* out);
RB_API rb_status rb_eta_star(rb_context* ctx, double rain_rate, double* eta, rb_regime* regime);
RB_API rb_status rb_add_wald(rb_context* ctx, double rain_rate, double* minutes);
/* observed holds one dB value per subcarrier. */
RB_API rb_status rb_estimate_mle(rb_context* ctx, const double* observed, size_t count, double* estimate,
                                 int* converged);

#ifdef __cplusplus
}
#endif

#endif
