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

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "rainbound/rainbound.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static int near(double a, double b, double tol) { return fabs(a - b) <= tol; }

int main(void) {
  rb_context* ctx = NULL;
  EXPECT(rb_context_create(NULL) == RB_ERR_ARGUMENT);
  EXPECT(rb_context_create(&ctx) == RB_OK);
  if (!ctx) return 1;
  EXPECT(strlen(rb_version()) > 0);
  EXPECT(strcmp(rb_status_string(RB_ERR_IO), "I/O error") == 0);

  double v = 0.0;
  EXPECT(rb_prior_information(ctx, &v) == RB_OK && near(v, 0.8062454512547286, 1e-12));
  EXPECT(rb_rmin(ctx, 0, &v) == RB_OK && near(v, 4.2642, 5e-4));
  EXPECT(rb_rmin(ctx, 30, &v) == RB_OK && near(v, 0.9477, 5e-4));
  EXPECT(rb_rmin(ctx, -1, &v) == RB_ERR_ARGUMENT);
  EXPECT(strlen(rb_last_error(ctx)) > 0);
  EXPECT(rb_crb_rmse(ctx, 20.0, &v) == RB_OK && near(v, 3.1916, 5e-4));
  EXPECT(strlen(rb_last_error(ctx)) == 0);
  EXPECT(rb_bcrb_rmse(ctx, 20.0, 30, &v) == RB_OK && near(v, 0.7523, 5e-4));
  EXPECT(rb_crb_rmse(ctx, 20.0, NULL) == RB_ERR_ARGUMENT);
  EXPECT(rb_crb_rmse(ctx, -1.0, &v) == RB_ERR_DOMAIN);

  rb_regime regime = RB_REGIME_FULL_SENSING;
  EXPECT(rb_eta_star(ctx, 60.0, &v, &regime) == RB_OK && regime == RB_REGIME_TRACKING);
  EXPECT(v > 0.18 && v < 0.2);
  EXPECT(rb_eta_star(ctx, 100.0, &v, &regime) == RB_OK && regime == RB_REGIME_OUTAGE);
  EXPECT(rb_add_wald(ctx, 20.0, &v) == RB_OK && near(v, 7.313191077944791, 1e-9));
  EXPECT(rb_add_wald(ctx, 0.5, &v) == RB_ERR_UNDETECTABLE);

  {
    const double clear[5] = {0.3, 0.3, 0.3, 0.3, 0.3};
    int converged = -1;
    EXPECT(rb_estimate_mle(ctx, clear, 4, &v, &converged) == RB_ERR_ARGUMENT);
    EXPECT(rb_estimate_mle(ctx, clear, 5, &v, &converged) == RB_OK);
    EXPECT(v > 0.0 && converged >= 0);
  }

  EXPECT(rb_set_option(ctx, "link.snr0_db", "12.5") == RB_OK);
  {
    char small[2];
    char buf[64];
    size_t needed = 0;
    EXPECT(rb_get_option(ctx, "link.snr0_db", small, sizeof small, &needed) == RB_ERR_BUFFER);
    EXPECT(needed == 5);
    EXPECT(rb_get_option(ctx, "link.snr0_db", buf, sizeof buf, &needed) == RB_OK && strcmp(buf, "12.5") == 0);
    EXPECT(rb_get_option(ctx, "link.nope", buf, sizeof buf, &needed) == RB_ERR_CONFIG);
  }
  {
    size_t needed = 0;
    char* text;
    EXPECT(rb_config_text(ctx, NULL, 0, &needed) == RB_ERR_BUFFER);
    text = (char*)malloc(needed);
    EXPECT(text && rb_config_text(ctx, text, needed, &needed) == RB_OK);
    if (text) {
      EXPECT(strstr(text, "snr0_db = 12.5") != NULL);
      EXPECT(rb_load_config_string(ctx, text) == RB_OK);
      free(text);
    }
  }
  EXPECT(rb_load_config_string(ctx, "[link]\nsnr0_db = x\n") == RB_ERR_PARSE);
  EXPECT(rb_load_config_string(ctx, "[prior]\nrho = 3\n") == RB_ERR_CONFIG);
  EXPECT(rb_load_config(ctx, "/nonexistent/rb.ini") == RB_ERR_IO);
  EXPECT(rb_load_config(ctx, NULL) == RB_ERR_ARGUMENT);
  EXPECT(rb_set_coefficient_mode(ctx, (rb_coefficient_mode)7) == RB_ERR_ARGUMENT);
  EXPECT(rb_set_noise_mode(ctx, RB_NOISE_CHI2) == RB_OK);
  EXPECT(rb_set_seed(ctx, 42) == RB_OK);

  /* An invalid configuration is reported when it is used. */
  EXPECT(rb_set_option(ctx, "prior.rho", "1.5") == RB_OK);
  EXPECT(rb_crb_rmse(ctx, 20.0, &v) == RB_ERR_CONFIG);
  EXPECT(rb_set_option(ctx, "prior.rho", "0.95") == RB_OK);

  EXPECT(rb_run(ctx, "nope", "/tmp", NULL) == RB_ERR_ARGUMENT);
  EXPECT(rb_run(ctx, "bounds", NULL, NULL) == RB_ERR_ARGUMENT);
  EXPECT(rb_run(ctx, "bounds", "/proc/rainbound_cannot_write", NULL) == RB_ERR_IO);

  EXPECT(rb_crb_rmse(NULL, 20.0, &v) == RB_ERR_ARGUMENT);
  rb_context_destroy(ctx);
  rb_context_destroy(NULL);

  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  puts("C API checks passed");
  return 0;
}
