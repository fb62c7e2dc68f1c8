/*
 * nhosc: non-Hermitian oscillator spectra in a truncated Fock basis.
 *
 * Plain C interface to the numerical core. All functions return an
 * nhosc_status; on failure nhosc_last_error() holds a message for the
 * calling thread. Result objects are opaque handles owned by the caller and
 * released with the matching *_free function. Strings returned through
 * char** are released with nhosc_string_free.
 */
#ifndef NHOSC_H
#define NHOSC_H

#include <stddef.h>

#if defined(NHOSC_BUILDING_LIBRARY)
#define NHOSC_API __attribute__((visibility("default")))
#else
#define NHOSC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum nhosc_status {
  NHOSC_OK = 0,
  NHOSC_ERROR_INTERNAL = 1,
  NHOSC_ERROR_CONFIG = 2, /* invalid argument, singular normalization, wrong regime */
  NHOSC_ERROR_SOLVER = 3,
  NHOSC_ERROR_IO = 4
} nhosc_status;

typedef enum nhosc_sort_order {
  NHOSC_SORT_RE_THEN_IM = 0,
  NHOSC_SORT_MODULUS_THEN_PHASE = 1
} nhosc_sort_order;

typedef enum nhosc_format { NHOSC_FORMAT_JSON = 0, NHOSC_FORMAT_CSV = 1 } nhosc_format;

typedef struct nhosc_basis {
  size_t n_dim;
  double freq;
  double scale;
} nhosc_basis;

typedef struct nhosc_params {
  double l_coef;
  double r_coef;
  double a_coef;
  double b_coef;
} nhosc_params;

typedef struct nhosc_variational {
  int defined;
  double w_v; /* 0 when undefined */
  double numerator;
  double denominator;
} nhosc_variational;

typedef struct nhosc_regime {
  double coef_p2;
  double coef_x2;
  double coef_cross;
  double ab_plus_c2;
  int real_spectrum;
} nhosc_regime;

typedef struct nhosc_commutator_defect {
  size_t n_dim;
  double max_diag_deviation;
  double last_diag_re;
  double last_diag_im;
  double max_offdiag;
} nhosc_commutator_defect;

typedef struct nhosc_classification {
  size_t n_real;
  size_t n_complex_pairs;
} nhosc_classification;

typedef struct nhosc_report_row {
  size_t level;
  double epsilon;
  double re;
  double im;
  double abs_dev;
  int iso;
} nhosc_report_row;

typedef struct nhosc_report_summary {
  size_t n_dim;
  size_t n_real;
  size_t n_complex_pairs;
  int has_first_deviation;
  size_t first_deviation_index;
  double matrix_norm;
} nhosc_report_summary;

typedef struct nhosc_sweep_point {
  double axis_value;
  size_t n_dim;
  size_t n_real;
  size_t n_complex_pairs;
  int has_first_deviation;
  size_t first_deviation_index;
  double max_abs_dev_below_first_deviation;
  int failed;
} nhosc_sweep_point;

typedef struct nhosc_duality {
  double distance;
  double matrix_norm;
} nhosc_duality;

typedef struct nhosc_spectrum nhosc_spectrum;
typedef struct nhosc_report nhosc_report;
typedef struct nhosc_sweep nhosc_sweep;

NHOSC_API const char* nhosc_version(void);
NHOSC_API const char* nhosc_last_error(void);
NHOSC_API void nhosc_string_free(char* s);

/* Model quantities. */
NHOSC_API nhosc_status nhosc_variational_frequency(const nhosc_params* params,
                                                   nhosc_variational* out);
NHOSC_API nhosc_status nhosc_classify_regime(const nhosc_params* params, nhosc_regime* out);
NHOSC_API nhosc_status nhosc_analytic_level(const nhosc_params* params, size_t level,
                                            double* out);
NHOSC_API nhosc_status nhosc_diagonal_expectation(const nhosc_basis* basis,
                                                  const nhosc_params* params, size_t level,
                                                  double trial_freq, double* out);

/* Row-major copy of H; buffer must hold n_dim*n_dim doubles. */
NHOSC_API nhosc_status nhosc_hamiltonian_matrix(const nhosc_basis* basis,
                                                const nhosc_params* params, double* out);

NHOSC_API nhosc_status nhosc_commutator_check(const nhosc_basis* basis,
                                              const nhosc_params* params,
                                              nhosc_commutator_defect* out);
NHOSC_API nhosc_status nhosc_commutator_serialize(const nhosc_basis* basis,
                                                  const nhosc_params* params,
                                                  nhosc_format format, const char* label,
                                                  char** out);

NHOSC_API nhosc_status nhosc_duality_check(const nhosc_basis* basis, const nhosc_params* params,
                                           nhosc_duality* out);
NHOSC_API nhosc_status nhosc_duality_serialize(const nhosc_basis* basis,
                                               const nhosc_params* params, nhosc_format format,
                                               const char* label, char** out);

/* Spectrum of H, or of an arbitrary real row-major matrix. */
NHOSC_API nhosc_status nhosc_spectrum_compute(const nhosc_basis* basis,
                                              const nhosc_params* params, nhosc_spectrum** out);
NHOSC_API nhosc_status nhosc_spectrum_from_matrix(size_t dim, const double* row_major,
                                                  nhosc_spectrum** out);
NHOSC_API size_t nhosc_spectrum_size(const nhosc_spectrum* s);
NHOSC_API nhosc_status nhosc_spectrum_value(const nhosc_spectrum* s, size_t index, double* re,
                                            double* im);
NHOSC_API nhosc_status nhosc_spectrum_sort(nhosc_spectrum* s, nhosc_sort_order order);
/* Negative tolerances select the defaults (1e-8 ||H||_F, 1e-10). */
NHOSC_API nhosc_status nhosc_spectrum_classify(const nhosc_spectrum* s, double tol_abs,
                                               double tol_rel, nhosc_classification* out);
NHOSC_API nhosc_status nhosc_spectrum_serialize(const nhosc_spectrum* s, nhosc_format format,
                                                size_t count, const char* label, char** out);
NHOSC_API void nhosc_spectrum_free(nhosc_spectrum* s);

/* Per-level comparison against (2n+1)|AB|. */
NHOSC_API nhosc_status nhosc_report_compute(const nhosc_basis* basis, const nhosc_params* params,
                                            double report_tol, nhosc_sort_order order,
                                            nhosc_report** out);
NHOSC_API size_t nhosc_report_size(const nhosc_report* r);
NHOSC_API nhosc_status nhosc_report_row_at(const nhosc_report* r, size_t index,
                                           nhosc_report_row* out);
NHOSC_API nhosc_status nhosc_report_get_summary(const nhosc_report* r,
                                                nhosc_report_summary* out);
NHOSC_API nhosc_status nhosc_report_serialize(const nhosc_report* r, nhosc_format format,
                                              size_t count, const char* label, char** out);
NHOSC_API nhosc_status nhosc_report_export(const nhosc_report* r, nhosc_format format,
                                           size_t count, const char* label, const char* path);
NHOSC_API void nhosc_report_free(nhosc_report* r);

/* Parameter sweeps. Failed points are flagged, not fatal. */
NHOSC_API nhosc_status nhosc_sweep_frequency(const nhosc_params* params, size_t n_dim,
                                             double scale, const double* w_values, size_t count,
                                             double report_tol, nhosc_sweep** out);
NHOSC_API nhosc_status nhosc_sweep_truncation(const nhosc_params* params, double freq,
                                              double scale, const size_t* n_values, size_t count,
                                              double report_tol, nhosc_sweep** out);
NHOSC_API size_t nhosc_sweep_size(const nhosc_sweep* s);
NHOSC_API nhosc_status nhosc_sweep_point_at(const nhosc_sweep* s, size_t index,
                                            nhosc_sweep_point* out);
/* Message for a failed point, or NULL. Valid while the handle lives. */
NHOSC_API const char* nhosc_sweep_point_error(const nhosc_sweep* s, size_t index);
NHOSC_API nhosc_status nhosc_sweep_serialize(const nhosc_sweep* s, nhosc_format format,
                                             const char* label, char** out);
NHOSC_API void nhosc_sweep_free(nhosc_sweep* s);

NHOSC_API nhosc_status nhosc_write_file(const char* path, const char* contents);

#ifdef __cplusplus
}
#endif

#endif /* NHOSC_H */
