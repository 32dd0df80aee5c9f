/*
 * Copyright 2026 the lamprank authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the exact rank-bracket engine. All computations run behind an
 * opaque session handle configured by a JSON object; results come back as
 * JSON strings allocated by the library (release with lr_string_free).
 *
 * Config keys (all optional):
 *   field       "Q" | "Q(zeta_N)" | "GF(p)" | "GF(p^2n;frob)"   (default "Q")
 *   system      "lamplighter" | "odometer"                       (default "lamplighter")
 *   level       approximation level n                            (default 0)
 *   cutoff      component length cutoff L                        (default 24)
 *   width       target bracket width, e.g. "1e-6" or "1/1000000" (default 1e-6)
 *   threads     worker threads, 0 = all available                (default 0)
 *   convention  "ones" | "zeros" marked-block convention         (default "ones")
 *   max_level / max_cutoff   budgets for the convergence driver
 *   seed        sampling seed for lr_verify
 *
 * Every function returns LR_OK on success; on failure the last error message
 * for the session is available via lr_last_error.
 */

#ifndef LAMPRANK_H
#define LAMPRANK_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lr_session lr_session;

typedef enum lr_status {
  LR_OK = 0,
  LR_ERR_CONFIG = 1,
  LR_ERR_SYNTAX = 2,
  LR_ERR_DOMAIN = 3,          /* mathematical precondition violated */
  LR_ERR_NOT_REPRESENTABLE = 4,
  LR_ERR_BUDGET = 5,          /* budget exhausted; best result still returned */
  LR_ERR_MEMORY = 6,
  LR_ERR_INTERNAL = 7
} lr_status;

/* Library version string, static storage. */
const char* lr_version(void);

/* Create a session from a JSON config (NULL or "" = defaults). On failure
 * returns NULL and, if err_out is non-NULL, stores a malloc'd message there
 * (release with lr_string_free). */
lr_session* lr_session_create(const char* config_json, char** err_out);
void lr_session_destroy(lr_session* s);

/* Message for the most recent failing call on this session; owned by the
 * session, valid until the next call. */
const char* lr_last_error(const lr_session* s);

/* Rank bracket of a (matrix of) group-algebra expression(s). width == NULL
 * computes a single bracket at the configured level/cutoff; otherwise the
 * driver refines until the width target or the budget is reached (LR_ERR_BUDGET,
 * with the best bracket still written to *json_out). */
lr_status lr_rank(lr_session* s, const char* expr, const char* width, char** json_out);

/* Kernel-dimension bracket: ambient size minus the rank bracket. */
lr_status lr_betti(lr_session* s, const char* expr, const char* width, char** json_out);

/* Return-word components at the configured system/level/cutoff. */
lr_status lr_components(lr_session* s, char** json_out);

/* Row of m-step Fibonacci numbers 0..upto. */
lr_status lr_macci(lr_session* s, unsigned m, unsigned upto, char** json_out);

/* Image of a group-algebra expression among locally constant functions. */
lr_status lr_fourier(lr_session* s, const char* expr, char** json_out);

/* Skew-series operations: op in {"invert", "project", "hadamard", "factor"};
 * expr_b is only read for "hadamard" and may be NULL otherwise. */
lr_status lr_series(lr_session* s, const char* op, const char* expr_a, const char* expr_b,
                    char** json_out);

/* Evaluation along the finite orbit of the periodic word (e.g. "01"). */
lr_status lr_quotient(lr_session* s, const char* expr, const char* periodic_word,
                      char** json_out);

/* Full quantitative verification suite; quick != 0 shrinks the sample counts.
 * Returns LR_OK when every criterion passes. */
lr_status lr_verify(lr_session* s, int quick, char** json_out);

/* The classical kernel-dimension reproduction at level 0. */
lr_status lr_demo_gz(lr_session* s, char** json_out);

/* Release any string returned through a char** out-parameter. */
void lr_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LAMPRANK_H */
