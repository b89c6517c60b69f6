// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "logdet/logdet.h"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "generators.hpp"
#include "logdet.hpp"
#include "matrix.hpp"
#include "matrix_market.hpp"
#include "rng.hpp"
#include "trace_estimator.hpp"

struct logdet_matrix {
    logdet::SpdMatrix matrix;
};

struct logdet_estimate {
    logdet::LogDetEstimate estimate;
};

namespace {

thread_local std::string last_error;

logdet_status to_status(logdet::ErrorKind kind)
{
    switch (kind) {
    case logdet::ErrorKind::invalid_argument:
        return LOGDET_ERR_INVALID_ARGUMENT;
    case logdet::ErrorKind::format:
        return LOGDET_ERR_FORMAT;
    case logdet::ErrorKind::io:
        return LOGDET_ERR_IO;
    case logdet::ErrorKind::not_positive_definite:
        return LOGDET_ERR_NOT_POSITIVE_DEFINITE;
    case logdet::ErrorKind::numerical:
        return LOGDET_ERR_NUMERICAL;
    case logdet::ErrorKind::shift_too_small:
        return LOGDET_ERR_SHIFT_TOO_SMALL;
    }
    return LOGDET_ERR_INTERNAL;
}

logdet_status fail(logdet_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

/// Runs body, translating exceptions into status codes.
template <typename Body>
logdet_status guarded(Body&& body)
{
    try {
        last_error.clear();
        body();
        return LOGDET_OK;
    } catch (const logdet::Error& e) {
        return fail(to_status(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(LOGDET_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LOGDET_ERR_INTERNAL, e.what());
    }
}

logdet_status null_argument(const char* name)
{
    return fail(LOGDET_ERR_INVALID_ARGUMENT,
                std::string("null argument: ") + name);
}

logdet_status emit(logdet::SpdMatrix&& m, logdet_matrix** out)
{
    *out = new logdet_matrix{std::move(m)};
    return LOGDET_OK;
}

logdet::EstimatorConfig to_config(const logdet_config& c)
{
    logdet::EstimatorConfig out;
    out.m = c.m;
    out.epsilon = c.epsilon;
    out.delta = c.delta;
    out.t = c.t;
    out.power_repetitions = c.power_repetitions;
    if (c.p_override > 0) {
        out.p_override = c.p_override;
    } else if (c.p_override < 0) {
        throw logdet::ContractViolation("p_override must be >= 0");
    }
    out.seed = c.seed;
    out.shift_factor = c.shift_factor;
    out.batch_probes = c.batch_probes != 0;
    out.keep_diagnostics = c.keep_diagnostics != 0;
    out.threads = c.threads;
    return out;
}

}  // namespace

extern "C" {

const char* logdet_last_error(void) { return last_error.c_str(); }

const char* logdet_status_string(logdet_status status)
{
    switch (status) {
    case LOGDET_OK:
        return "ok";
    case LOGDET_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case LOGDET_ERR_FORMAT:
        return "format error";
    case LOGDET_ERR_IO:
        return "i/o error";
    case LOGDET_ERR_NOT_POSITIVE_DEFINITE:
        return "not positive definite";
    case LOGDET_ERR_NUMERICAL:
        return "numerical error";
    case LOGDET_ERR_SHIFT_TOO_SMALL:
        return "shift too small";
    case LOGDET_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* logdet_version(void) { return "1.0.0"; }

logdet_status logdet_matrix_load_mm(const char* path, logdet_matrix** out)
{
    if (path == nullptr || out == nullptr) {
        return null_argument("path/out");
    }
    return guarded([&] { emit(logdet::load_matrix_market(path), out); });
}

logdet_status logdet_matrix_save_mm(const logdet_matrix* a, const char* path)
{
    if (a == nullptr || path == nullptr) {
        return null_argument("matrix/path");
    }
    return guarded([&] { logdet::save_matrix_market(a->matrix, path); });
}

logdet_status logdet_matrix_from_dense(int64_t n, const double* row_major,
                                       logdet_matrix** out)
{
    if (row_major == nullptr || out == nullptr) {
        return null_argument("values/out");
    }
    return guarded([&] {
        if (n < 1) {
            throw logdet::ContractViolation("matrix order must be positive");
        }
        std::vector<double> values(row_major, row_major + n * n);
        emit(logdet::SpdMatrix::dense(n, std::move(values)), out);
    });
}

logdet_status logdet_matrix_from_csr(int64_t n, const int64_t* row_ptr,
                                     const int64_t* col_idx,
                                     const double* values, logdet_matrix** out)
{
    if (row_ptr == nullptr || out == nullptr) {
        return null_argument("row_ptr/out");
    }
    return guarded([&] {
        if (n < 1) {
            throw logdet::ContractViolation("matrix order must be positive");
        }
        const int64_t nnz = row_ptr[n];
        if (nnz < 0 || (nnz > 0 && (col_idx == nullptr || values == nullptr))) {
            throw logdet::ContractViolation("invalid CSR arrays");
        }
        emit(logdet::SpdMatrix::from_csr(
                 n, std::vector<logdet::Index>(row_ptr, row_ptr + n + 1),
                 std::vector<logdet::Index>(col_idx, col_idx + nnz),
                 std::vector<double>(values, values + nnz)),
             out);
    });
}

logdet_status logdet_matrix_diagonal(int64_t n, const double* diag,
                                     logdet_matrix** out)
{
    if (diag == nullptr || out == nullptr) {
        return null_argument("diag/out");
    }
    return guarded([&] {
        if (n < 1) {
            throw logdet::ContractViolation("matrix order must be positive");
        }
        emit(logdet::SpdMatrix::diagonal(std::span<const double>(diag, n)),
             out);
    });
}

logdet_status logdet_matrix_generate(logdet_generator_family family, int64_t n,
                                     int64_t nnz_target, uint64_t seed,
                                     logdet_matrix** out)
{
    if (out == nullptr) {
        return null_argument("out");
    }
    return guarded([&] {
        logdet::GeneratorSpec spec;
        switch (family) {
        case LOGDET_GEN_DENSE:
            spec.family = logdet::GeneratorFamily::dense;
            break;
        case LOGDET_GEN_DENSE_DD:
            spec.family = logdet::GeneratorFamily::dense_dd;
            break;
        case LOGDET_GEN_SPARSE_DD:
            spec.family = logdet::GeneratorFamily::sparse_dd;
            break;
        default:
            throw logdet::ContractViolation("unknown generator family");
        }
        spec.n = n;
        spec.nnz_target = nnz_target;
        spec.seed = seed;
        emit(logdet::generate(spec), out);
    });
}

void logdet_matrix_free(logdet_matrix* a) { delete a; }

int64_t logdet_matrix_order(const logdet_matrix* a)
{
    return a == nullptr ? 0 : a->matrix.n();
}

int64_t logdet_matrix_nnz(const logdet_matrix* a)
{
    return a == nullptr ? 0 : a->matrix.nnz();
}

int logdet_matrix_is_sparse(const logdet_matrix* a)
{
    return a != nullptr && a->matrix.is_sparse() ? 1 : 0;
}

logdet_status logdet_matvec(const logdet_matrix* a, const double* x,
                            int64_t len, double* y)
{
    if (a == nullptr || x == nullptr || y == nullptr) {
        return null_argument("matrix/x/y");
    }
    return guarded([&] {
        if (len != a->matrix.n()) {
            throw logdet::ContractViolation("vector length " +
                                            std::to_string(len) +
                                            " does not match matrix order");
        }
        logdet::matvec(a->matrix, std::span<const double>(x, len),
                       std::span<double>(y, len));
    });
}

logdet_status logdet_matrix_validate(const logdet_matrix* a,
                                     logdet_validation* out)
{
    if (a == nullptr || out == nullptr) {
        return null_argument("matrix/out");
    }
    return guarded([&] {
        const auto& m = a->matrix;
        std::vector<double> off(static_cast<std::size_t>(m.n()), 0.0);
        std::vector<double> diag(static_cast<std::size_t>(m.n()), 0.0);
        m.for_each_entry([&](logdet::Index i, logdet::Index j, double v) {
            if (i == j) {
                diag[i] = v;
            } else {
                off[i] += std::abs(v);
            }
        });
        double margin = diag[0] - off[0];
        bool positive = true;
        for (logdet::Index i = 0; i < m.n(); ++i) {
            margin = std::min(margin, diag[i] - off[i]);
            positive = positive && diag[i] > 0.0;
        }
        out->n = m.n();
        out->nnz = m.nnz();
        out->symmetric = m.symmetry_checked() ? 1 : 0;
        out->diagonal_positive = positive ? 1 : 0;
        out->gershgorin_definite = margin > 0.0 ? 1 : 0;
        out->gershgorin_margin = margin;
    });
}

logdet_status logdet_exact(const logdet_matrix* a, logdet_exact_method method,
                           double* out, int64_t* failed_index)
{
    if (failed_index != nullptr) {
        *failed_index = -1;
    }
    if (a == nullptr || out == nullptr) {
        return null_argument("matrix/out");
    }
    try {
        last_error.clear();
        switch (method) {
        case LOGDET_EXACT_CHOLESKY:
            *out = logdet::exact_logdet_cholesky(a->matrix);
            return LOGDET_OK;
        case LOGDET_EXACT_EIG:
            *out = logdet::exact_logdet_eig(a->matrix);
            return LOGDET_OK;
        }
        return fail(LOGDET_ERR_INVALID_ARGUMENT, "unknown exact method");
    } catch (const logdet::NotPositiveDefinite& e) {
        if (failed_index != nullptr) {
            *failed_index = e.index();
        }
        return fail(LOGDET_ERR_NOT_POSITIVE_DEFINITE, e.what());
    } catch (const logdet::Error& e) {
        return fail(to_status(e.kind()), e.what());
    } catch (const std::exception& e) {
        return fail(LOGDET_ERR_INTERNAL, e.what());
    }
}

void logdet_config_default(logdet_config* config)
{
    if (config == nullptr) {
        return;
    }
    const logdet::EstimatorConfig d;
    config->m = d.m;
    config->epsilon = d.epsilon;
    config->delta = d.delta;
    config->t = d.t;
    config->power_repetitions = d.power_repetitions;
    config->p_override = 0;
    config->seed = d.seed;
    config->shift_factor = d.shift_factor;
    config->batch_probes = d.batch_probes ? 1 : 0;
    config->keep_diagnostics = d.keep_diagnostics ? 1 : 0;
    config->threads = d.threads;
}

logdet_status logdet_approx(const logdet_matrix* a, const logdet_config* config,
                            logdet_estimate** out)
{
    if (a == nullptr || config == nullptr || out == nullptr) {
        return null_argument("matrix/config/out");
    }
    return guarded([&] {
        auto estimate = logdet::approx_logdet(a->matrix, to_config(*config));
        *out = new logdet_estimate{std::move(estimate)};
    });
}

void logdet_estimate_free(logdet_estimate* e) { delete e; }

double logdet_estimate_value(const logdet_estimate* e)
{
    return e == nullptr ? NAN : e->estimate.value;
}

double logdet_estimate_alpha(const logdet_estimate* e)
{
    return e == nullptr ? NAN : e->estimate.alpha;
}

double logdet_estimate_lambda_hat(const logdet_estimate* e)
{
    return e == nullptr ? NAN : e->estimate.lambda_hat;
}

double logdet_estimate_wall_time(const logdet_estimate* e)
{
    return e == nullptr ? NAN : e->estimate.wall_time;
}

int64_t logdet_estimate_probes(const logdet_estimate* e)
{
    return e == nullptr ? 0 : e->estimate.p;
}

int32_t logdet_estimate_terms(const logdet_estimate* e)
{
    return e == nullptr ? 0 : e->estimate.config.m;
}

int32_t logdet_estimate_iterations(const logdet_estimate* e)
{
    return e == nullptr ? 0 : e->estimate.t;
}

logdet_status logdet_estimate_partials(const logdet_estimate* e, double* out,
                                       int64_t len)
{
    if (e == nullptr || out == nullptr) {
        return null_argument("estimate/out");
    }
    const auto& partial = e->estimate.partial_by_m;
    const auto count =
        std::min<int64_t>(len, static_cast<int64_t>(partial.size()));
    std::copy_n(partial.begin(), std::max<int64_t>(count, 0), out);
    return LOGDET_OK;
}

logdet_status logdet_estimate_probe_series(const logdet_estimate* e,
                                           double* out, int64_t len)
{
    if (e == nullptr || out == nullptr) {
        return null_argument("estimate/out");
    }
    const auto& series = e->estimate.per_probe_series;
    if (series.empty()) {
        return fail(LOGDET_ERR_INVALID_ARGUMENT,
                    "estimate was made without keep_diagnostics");
    }
    if (len < static_cast<int64_t>(series.size())) {
        return fail(LOGDET_ERR_INVALID_ARGUMENT, "output buffer too small");
    }
    std::copy(series.begin(), series.end(), out);
    return LOGDET_OK;
}

logdet_status logdet_probes_needed(double epsilon, double delta, int64_t* p)
{
    if (p == nullptr) {
        return null_argument("p");
    }
    return guarded([&] { *p = logdet::probes_needed(epsilon, delta); });
}

logdet_status logdet_error_bound(double lambda_1, double lambda_n, int64_t n,
                                 double alpha, int32_t m, double epsilon,
                                 const double* spectrum, int64_t spectrum_len,
                                 logdet_error_bound_report* out)
{
    if (out == nullptr) {
        return null_argument("out");
    }
    return guarded([&] {
        std::span<const double> values;
        if (spectrum != nullptr && spectrum_len > 0) {
            values = std::span<const double>(spectrum, spectrum_len);
        }
        const auto r = logdet::error_bound(lambda_1, lambda_n, n, alpha, m,
                                           epsilon, values);
        out->gamma_eff = r.gamma_eff;
        out->gamma_stated = r.gamma_stated;
        out->Gamma = r.Gamma;
        out->kappa = r.kappa;
        out->bound = r.bound;
        out->bound_stated = r.bound_stated;
        out->gamma_from_spectrum = r.gamma_from_spectrum ? 1 : 0;
    });
}

logdet_status logdet_select_parameters(double kappa, double target_eps,
                                       int32_t* m, double* epsilon)
{
    if (m == nullptr || epsilon == nullptr) {
        return null_argument("m/epsilon");
    }
    return guarded([&] {
        const auto s = logdet::select_parameters(kappa, target_eps);
        *m = s.m;
        *epsilon = s.epsilon;
    });
}

logdet_status logdet_truncated_series(const logdet_matrix* a, double alpha,
                                      int32_t m, double* out)
{
    if (a == nullptr || out == nullptr) {
        return null_argument("matrix/out");
    }
    return guarded([&] {
        *out = logdet::truncated_series_exact_trace(a->matrix, alpha, m);
    });
}

uint64_t logdet_derive_seed(uint64_t master, uint64_t index)
{
    return logdet::derive_seed(master, index);
}

int32_t logdet_default_iterations(int64_t n)
{
    return n < 1 ? 0 : logdet::default_power_iterations(n);
}

}  // extern "C"
