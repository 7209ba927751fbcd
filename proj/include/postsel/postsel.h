// Copyright 2026 The Postsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSTSEL_POSTSEL_H
#define POSTSEL_POSTSEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define POSTSEL_API __declspec(dllexport)
#else
#define POSTSEL_API __attribute__((visibility("default")))
#endif

/* Every fallible call returns a status. On failure a message is available
 * from postsel_last_error() on the calling thread until its next call. */
typedef enum postsel_status {
    POSTSEL_OK = 0,
    POSTSEL_ERR_DOMAIN = 1,
    POSTSEL_ERR_CAPACITY = 2,
    POSTSEL_ERR_DEGREE_OVERFLOW = 3,
    POSTSEL_ERR_POSTSELECTION_IMPOSSIBLE = 4,
    POSTSEL_ERR_NUMERICAL_UNDERFLOW = 5,
    POSTSEL_ERR_THEOREM_VIOLATION = 6,
    /* A pipeline stage failed; see postsel_last_error_stage(). */
    POSTSEL_ERR_STAGE = 7,
    POSTSEL_ERR_IO = 8,
    POSTSEL_ERR_INVALID_ARGUMENT = 9,
    POSTSEL_ERR_INTERNAL = 10
} postsel_status;

typedef struct postsel_state postsel_state;
typedef struct postsel_poly postsel_poly;
typedef struct postsel_table postsel_table;
typedef struct postsel_compiled postsel_compiled;
typedef struct postsel_sign postsel_sign;

POSTSEL_API const char *postsel_version(void);
POSTSEL_API const char *postsel_status_name(postsel_status status);
/* Message of the last failure on this thread; "" if none. */
POSTSEL_API const char *postsel_last_error(void);
/* Stage tag of the last POSTSEL_ERR_STAGE failure on this thread; "" otherwise. */
POSTSEL_API const char *postsel_last_error_stage(void);
/* Releases any string returned through a char** out-parameter. */
POSTSEL_API void postsel_string_free(char *s);

POSTSEL_API uint64_t postsel_derive_stream(uint64_t master_seed, uint64_t task_id, uint64_t replica_index);

/* ---- experiments ---- */

/* Runs a named experiment with a JSON object of parameters and writes the
 * report JSON to *report_out. Reports do not depend on `threads`;
 * timing != 0 adds wall-clock seconds to the metrics. */
POSTSEL_API postsel_status postsel_run_experiment(const char *name, const char *params_json, uint64_t seed,
                                                  int threads, int timing, char **report_out);
/* JSON array of experiment names. */
POSTSEL_API postsel_status postsel_experiment_names(char **json_out);
/* CSV rendering of a report's rows ("" when it has none). */
POSTSEL_API postsel_status postsel_report_to_csv(const char *report_json, char **csv_out);

POSTSEL_API int postsel_criterion_count(void);
POSTSEL_API postsel_status postsel_criterion_title(int id, char **title_out);
POSTSEL_API postsel_status postsel_run_criterion(int id, uint64_t seed, int threads, int *pass_out,
                                                 char **report_out);

/* ---- state vectors ---- */

POSTSEL_API postsel_status postsel_state_basis(int num_qubits, uint64_t index, postsel_state **out);
/* Amplitudes must have unit norm within 1e-9. */
POSTSEL_API postsel_status postsel_state_from_amplitudes(int num_qubits, const double *amps, size_t len,
                                                         postsel_state **out);
POSTSEL_API void postsel_state_free(postsel_state *s);
POSTSEL_API int postsel_state_num_qubits(const postsel_state *s);
/* Copies 2^n amplitudes into out (len must be at least 2^n). */
POSTSEL_API postsel_status postsel_state_amplitudes(const postsel_state *s, double *out, size_t len);
POSTSEL_API postsel_status postsel_state_apply_hadamards(postsel_state *s, int first, int width);
/* Bit query |i>|b> -> |i>|b xor x_i> with the index register
 * [first, first+width). zero_based selects x_0..x_{N-1} addressing; otherwise
 * register value i addresses x_i (1-based) and value 0 is left unchanged.
 * Adds the charged queries to *queries (may be NULL). */
POSTSEL_API postsel_status postsel_state_apply_bit_query(postsel_state *s, const uint8_t *x, size_t n, int first,
                                                         int width, int target, int zero_based,
                                                         uint64_t *queries);
/* Keeps register value `value`, renormalizes, writes the pre-postselection
 * probability of that outcome. */
POSTSEL_API postsel_status postsel_state_postselect(postsel_state *s, int first, int width, uint64_t value,
                                                    double *prob_out);
POSTSEL_API postsel_status postsel_state_probability(const postsel_state *s, int first, int width,
                                                     uint64_t value, double *prob_out);

/* ---- Boolean functions and polynomials ---- */

/* A truth-table string ('0'/'1' characters or whitespace-separated reals) or
 * a family spec "or:N", "and:N", "maj:N", "parity:N", "dict:N:i". */
POSTSEL_API postsel_status postsel_table_parse(const char *text, postsel_table **out);
POSTSEL_API void postsel_table_free(postsel_table *t);
POSTSEL_API int postsel_table_num_vars(const postsel_table *t);
POSTSEL_API postsel_status postsel_table_value(const postsel_table *t, uint64_t x, double *out);
/* Fourier coefficients, 2^n entries indexed like cube points. */
POSTSEL_API postsel_status postsel_table_fourier(const postsel_table *t, double *out, size_t len);
/* Unique multilinear interpolant. */
POSTSEL_API postsel_status postsel_table_interpolate(const postsel_table *t, postsel_poly **out);

POSTSEL_API postsel_status postsel_poly_from_json(const char *json, postsel_poly **out);
POSTSEL_API postsel_status postsel_poly_to_json(const postsel_poly *p, char **json_out);
POSTSEL_API void postsel_poly_free(postsel_poly *p);
POSTSEL_API int postsel_poly_degree(const postsel_poly *p);
POSTSEL_API postsel_status postsel_poly_evaluate(const postsel_poly *p, const double *point, size_t n,
                                                 double *out);

/* ---- compiler ---- */

typedef struct postsel_compile_row {
    double success_prob;
    double conditional_error;
    double ratio;
    int f_value;
    uint64_t queries;
} postsel_compile_row;

POSTSEL_API postsel_status postsel_compile(const postsel_poly *p, const postsel_poly *q, double eps,
                                           postsel_compiled **out);
POSTSEL_API void postsel_compiled_free(postsel_compiled *c);
POSTSEL_API int postsel_compiled_degree(const postsel_compiled *c);
/* f_value < 0 scores against sign(R/Q). */
POSTSEL_API postsel_status postsel_compiled_run(const postsel_compiled *c, const uint8_t *x, size_t n,
                                                int f_value, postsel_compile_row *row_out);

/* ---- approximants ---- */

POSTSEL_API postsel_status postsel_newman_r(int d, double x, double *out);
POSTSEL_API postsel_status postsel_newman_abs(int d, double x, double *out);
POSTSEL_API postsel_status postsel_sign_create(double eps, postsel_sign **out);
POSTSEL_API void postsel_sign_free(postsel_sign *s);
POSTSEL_API int postsel_sign_num_inputs(const postsel_sign *s);
POSTSEL_API postsel_status postsel_sign_evaluate(const postsel_sign *s, double z, double *out);

/* ---- majority ---- */

/* Exact Pr[output 1] at real weight z; t <= 0 picks t automatically. */
POSTSEL_API postsel_status postsel_majority_exact(int n, double eps, double z, int t, double *p1_out);

/* ---- rational degree ---- */

/* eps as "num/den" or a decimal. On success *feasible_out is 0 or 1 and
 * *witness_out (may be NULL) receives the witness JSON or NULL. */
POSTSEL_API postsel_status postsel_rdeg_feasible(const postsel_table *f, int d, const char *eps, int symmetric,
                                                 int *feasible_out, char **witness_out);

#ifdef __cplusplus
}
#endif

#endif
