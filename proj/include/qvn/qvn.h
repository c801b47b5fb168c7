/*
 * qvn.h -- C interface to the quaternionic operator-algebra toolkit.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns a qvn_status; on failure the context keeps a
 * human-readable message retrievable with qvn_context_last_error().
 * Strings returned through char** must be released with qvn_string_free().
 */
#ifndef QVN_H
#define QVN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QVN_BUILDING_LIBRARY)
#    define QVN_API __declspec(dllexport)
#  else
#    define QVN_API __declspec(dllimport)
#  endif
#else
#  define QVN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qvn_context qvn_context;
typedef struct qvn_matrix qvn_matrix;
typedef struct qvn_algebra qvn_algebra;

/* Values double as CLI exit codes. */
typedef enum qvn_status {
  QVN_OK = 0,
  QVN_ERR_CHECK_FAILED = 1,
  QVN_ERR_PARSE = 2,
  QVN_ERR_PRECONDITION = 3,
  QVN_ERR_DEGENERATE = 4,
  QVN_ERR_INTERNAL = 5,
  QVN_ERR_INVALID_ARGUMENT = 6
} qvn_status;

typedef enum qvn_algebra_type {
  QVN_TYPE_QUATERNIONIC_REAL = 1,
  QVN_TYPE_QUATERNIONIC_COMPLEX = 2,
  QVN_TYPE_QUATERNIONIC_QUATERNIONIC = 4
} qvn_algebra_type;

QVN_API const char* qvn_status_string(qvn_status status);
QVN_API const char* qvn_version(void);

/* Context: tolerances, seed and last error message. */
QVN_API qvn_status qvn_context_create(qvn_context** out);
QVN_API void qvn_context_destroy(qvn_context* ctx);
QVN_API qvn_status qvn_context_set_tolerance(qvn_context* ctx, double tol);
QVN_API qvn_status qvn_context_set_rank_eps(qvn_context* ctx, double rank_eps);
QVN_API qvn_status qvn_context_set_seed(qvn_context* ctx, uint64_t seed);
QVN_API double qvn_context_tolerance(const qvn_context* ctx);
QVN_API const char* qvn_context_last_error(const qvn_context* ctx);

/* Quaternionic matrices; a quaternion is double[4] in the order 1, i, j, k. */
QVN_API qvn_status qvn_matrix_create(qvn_context* ctx, size_t rows, size_t cols, qvn_matrix** out);
QVN_API qvn_status qvn_matrix_from_json(qvn_context* ctx, const char* json, qvn_matrix** out);
QVN_API qvn_status qvn_matrix_to_json(qvn_context* ctx, const qvn_matrix* m, char** out);
QVN_API void qvn_matrix_destroy(qvn_matrix* m);
QVN_API size_t qvn_matrix_rows(const qvn_matrix* m);
QVN_API size_t qvn_matrix_cols(const qvn_matrix* m);
QVN_API qvn_status qvn_matrix_set(qvn_matrix* m, size_t row, size_t col, const double q[4]);
QVN_API qvn_status qvn_matrix_get(const qvn_matrix* m, size_t row, size_t col, double q[4]);
QVN_API qvn_status qvn_matrix_multiply(qvn_context* ctx, const qvn_matrix* a, const qvn_matrix* b,
                                       qvn_matrix** out);
QVN_API qvn_status qvn_matrix_adjoint(qvn_context* ctx, const qvn_matrix* a, qvn_matrix** out);
QVN_API qvn_status qvn_matrix_opnorm(qvn_context* ctx, const qvn_matrix* a, double* out);

/* Operator algebras. */
QVN_API qvn_status qvn_algebra_generated(qvn_context* ctx, const qvn_matrix* const* gens, size_t count,
                                         qvn_algebra** out);
QVN_API qvn_status qvn_algebra_commutant(qvn_context* ctx, const qvn_matrix* const* gens, size_t count,
                                         qvn_algebra** out);
QVN_API void qvn_algebra_destroy(qvn_algebra* alg);
QVN_API size_t qvn_algebra_dim(const qvn_algebra* alg);
QVN_API size_t qvn_algebra_n(const qvn_algebra* alg);
QVN_API qvn_status qvn_algebra_basis(qvn_context* ctx, const qvn_algebra* alg, size_t index,
                                     qvn_matrix** out);
QVN_API qvn_status qvn_algebra_contains(qvn_context* ctx, const qvn_algebra* alg, const qvn_matrix* m,
                                        int* out);
/* j_out / k_out may be NULL; they receive NULL when the type has no such payload. */
QVN_API qvn_status qvn_algebra_classify(qvn_context* ctx, const qvn_algebra* alg, qvn_algebra_type* type,
                                        qvn_matrix** j_out, qvn_matrix** k_out);

/*
 * Document-level commands: "classify", "commutant", "spectral", "polar",
 * "reduce". The input is the command's JSON document; the output is a
 * ReportDocument. A report is produced whenever the status is not
 * QVN_ERR_PARSE or QVN_ERR_INVALID_ARGUMENT.
 */
QVN_API qvn_status qvn_run_command(qvn_context* ctx, const char* command, const char* input_json,
                                   char** report_json);

/* Property suite over dimensions [dim_lo, dim_hi]; uses the context seed. */
QVN_API qvn_status qvn_verify(qvn_context* ctx, int dim_lo, int dim_hi, int trials, char** report_json);

QVN_API void qvn_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QVN_H */
