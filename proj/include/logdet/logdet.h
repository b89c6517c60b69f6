/*
 * SPDX-FileCopyrightText: 2026 The logdet authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface to the randomized log-determinant library.
 *
 * Objects are opaque handles created by logdet_*_create/load/generate
 * functions and released with the matching *_free. Every fallible call
 * returns a logdet_status; on failure a message for the calling thread is
 * available from logdet_last_error(). Matrices are immutable and may be
 * shared across threads.
 */
#ifndef LOGDET_LOGDET_H
#define LOGDET_LOGDET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LOGDET_BUILDING_LIBRARY)
#define LOGDET_API __declspec(dllexport)
#else
#define LOGDET_API __declspec(dllimport)
#endif
#else
#define LOGDET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum logdet_status {
    LOGDET_OK = 0,
    LOGDET_ERR_INVALID_ARGUMENT = 1,
    LOGDET_ERR_FORMAT = 2,
    LOGDET_ERR_IO = 3,
    LOGDET_ERR_NOT_POSITIVE_DEFINITE = 4,
    LOGDET_ERR_NUMERICAL = 5,
    LOGDET_ERR_SHIFT_TOO_SMALL = 6,
    LOGDET_ERR_INTERNAL = 7
} logdet_status;

typedef enum logdet_generator_family {
    LOGDET_GEN_DENSE = 0,
    LOGDET_GEN_DENSE_DD = 1,
    LOGDET_GEN_SPARSE_DD = 2
} logdet_generator_family;

typedef enum logdet_exact_method {
    LOGDET_EXACT_CHOLESKY = 0,
    LOGDET_EXACT_EIG = 1
} logdet_exact_method;

typedef struct logdet_matrix logdet_matrix;
typedef struct logdet_estimate logdet_estimate;

/* Message for the last failing call on this thread ("" if none). */
LOGDET_API const char* logdet_last_error(void);
LOGDET_API const char* logdet_status_string(logdet_status status);
LOGDET_API const char* logdet_version(void);

/* ---- matrices ---------------------------------------------------------- */

LOGDET_API logdet_status logdet_matrix_load_mm(const char* path,
                                               logdet_matrix** out);
LOGDET_API logdet_status logdet_matrix_save_mm(const logdet_matrix* a,
                                               const char* path);
/* Full n x n row-major array; symmetrized within 1e-12 * max|A|. */
LOGDET_API logdet_status logdet_matrix_from_dense(int64_t n,
                                                  const double* row_major,
                                                  logdet_matrix** out);
/* Full symmetric CSR (both triangles), 0-based. */
LOGDET_API logdet_status logdet_matrix_from_csr(int64_t n,
                                                const int64_t* row_ptr,
                                                const int64_t* col_idx,
                                                const double* values,
                                                logdet_matrix** out);
LOGDET_API logdet_status logdet_matrix_diagonal(int64_t n, const double* diag,
                                                logdet_matrix** out);
/* nnz_target is only read for LOGDET_GEN_SPARSE_DD. */
LOGDET_API logdet_status logdet_matrix_generate(logdet_generator_family family,
                                                int64_t n, int64_t nnz_target,
                                                uint64_t seed,
                                                logdet_matrix** out);
LOGDET_API void logdet_matrix_free(logdet_matrix* a);

LOGDET_API int64_t logdet_matrix_order(const logdet_matrix* a);
LOGDET_API int64_t logdet_matrix_nnz(const logdet_matrix* a);
LOGDET_API int logdet_matrix_is_sparse(const logdet_matrix* a);

/* y = A x; both arrays have length n. */
LOGDET_API logdet_status logdet_matvec(const logdet_matrix* a, const double* x,
                                       int64_t len, double* y);

typedef struct logdet_validation {
    int64_t n;
    int64_t nnz;
    int symmetric;          /* always 1 for a constructed matrix */
    int diagonal_positive;  /* always 1 for a constructed matrix */
    /* 1 if every row is strictly diagonally dominant (Gershgorin: SPD). */
    int gershgorin_definite;
    /* min_i (a_ii - sum_{j != i} |a_ij|). */
    double gershgorin_margin;
} logdet_validation;

LOGDET_API logdet_status logdet_matrix_validate(const logdet_matrix* a,
                                                logdet_validation* out);

/* ---- exact baselines --------------------------------------------------- */

/* failed_index (may be NULL) receives the failing pivot/eigenvalue index on
 * LOGDET_ERR_NOT_POSITIVE_DEFINITE, otherwise -1. */
LOGDET_API logdet_status logdet_exact(const logdet_matrix* a,
                                      logdet_exact_method method, double* out,
                                      int64_t* failed_index);

/* ---- randomized estimate ----------------------------------------------- */

typedef struct logdet_config {
    int32_t m;
    double epsilon;
    double delta;
    int32_t t;                  /* 0: ceil(log2(4n)) */
    int32_t power_repetitions;
    int64_t p_override;         /* 0: derive from epsilon and delta */
    uint64_t seed;
    double shift_factor;        /* alpha = shift_factor * lambda_hat */
    int32_t batch_probes;
    int32_t keep_diagnostics;
    int32_t threads;
} logdet_config;

LOGDET_API void logdet_config_default(logdet_config* config);

LOGDET_API logdet_status logdet_approx(const logdet_matrix* a,
                                       const logdet_config* config,
                                       logdet_estimate** out);
LOGDET_API void logdet_estimate_free(logdet_estimate* e);

LOGDET_API double logdet_estimate_value(const logdet_estimate* e);
LOGDET_API double logdet_estimate_alpha(const logdet_estimate* e);
LOGDET_API double logdet_estimate_lambda_hat(const logdet_estimate* e);
LOGDET_API double logdet_estimate_wall_time(const logdet_estimate* e);
LOGDET_API int64_t logdet_estimate_probes(const logdet_estimate* e);
LOGDET_API int32_t logdet_estimate_terms(const logdet_estimate* e);
LOGDET_API int32_t logdet_estimate_iterations(const logdet_estimate* e);
/* Copies min(len, m) partial estimates (truncation after k = 1..m terms). */
LOGDET_API logdet_status logdet_estimate_partials(const logdet_estimate* e,
                                                  double* out, int64_t len);
/* Row-major p x m quadratic forms; LOGDET_ERR_INVALID_ARGUMENT unless the
 * estimate kept diagnostics and len >= p * m. */
LOGDET_API logdet_status logdet_estimate_probe_series(const logdet_estimate* e,
                                                      double* out,
                                                      int64_t len);

/* ---- analysis helpers -------------------------------------------------- */

LOGDET_API logdet_status logdet_probes_needed(double epsilon, double delta,
                                              int64_t* p);

typedef struct logdet_error_bound_report {
    double gamma_eff;
    double gamma_stated;
    double Gamma;
    double kappa;
    double bound;
    double bound_stated;
    int gamma_from_spectrum;
} logdet_error_bound_report;

/* spectrum may be NULL (surrogate Gamma = n ln(5 kappa)). */
LOGDET_API logdet_status logdet_error_bound(double lambda_1, double lambda_n,
                                            int64_t n, double alpha, int32_t m,
                                            double epsilon,
                                            const double* spectrum,
                                            int64_t spectrum_len,
                                            logdet_error_bound_report* out);

LOGDET_API logdet_status logdet_select_parameters(double kappa,
                                                  double target_eps,
                                                  int32_t* m, double* epsilon);

LOGDET_API logdet_status logdet_truncated_series(const logdet_matrix* a,
                                                 double alpha, int32_t m,
                                                 double* out);

/* Deterministic child seed (benchmark repeats). */
LOGDET_API uint64_t logdet_derive_seed(uint64_t master, uint64_t index);

/* ceil(log2(4 n)). */
LOGDET_API int32_t logdet_default_iterations(int64_t n);

#ifdef __cplusplus
}
#endif

#endif /* LOGDET_LOGDET_H */
