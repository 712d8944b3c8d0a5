/* lmgq.h — C API for the LMG-environment qubit dephasing simulator.
 *
 * A central qubit dephases against a Lipkin-Meshkov-Glick spin environment
 * after a sudden quench of the coupling. The library reproduces the spectral
 * structure of the environment (including its excited-state quantum phase
 * transition at E = 0), the decoherence factor M(t), the qubit quantum-speed-
 * limit time, and the BLP non-Markovianity measure, as deterministic numeric
 * tables.
 *
 * All experiment entry points return 0 on success or a nonzero status code;
 * lmgq_last_error() describes the most recent failure on the calling thread.
 * Tables returned through lmgq_table** handles are owned by the caller and
 * must be released with lmgq_table_free().
 */

#ifndef LMGQ_H
#define LMGQ_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef LMGQ_API
#if defined(_WIN32)
#define LMGQ_API
#else
#define LMGQ_API __attribute__((visibility("default")))
#endif
#endif

/* Status codes; the CLI reuses them as exit codes. */
enum {
    LMGQ_OK = 0,
    LMGQ_ERR_CONFIG = 2,   /* invalid parameters */
    LMGQ_ERR_NUMERIC = 3,  /* numerical failure */
    LMGQ_ERR_IO = 4        /* filesystem failure */
};

enum {
    LMGQ_FRAME_CRITICAL = 0,    /* quenched spectrum shifted so the ESQPT sits at E = 0 */
    LMGQ_FRAME_INTERACTION = 1  /* energies referenced to the pre-quench ground state */
};

enum {
    LMGQ_FORMAT_CSV = 0,
    LMGQ_FORMAT_JSON = 1
};

typedef struct lmgq_table lmgq_table;

LMGQ_API const char* lmgq_version(void);
LMGQ_API const char* lmgq_last_error(void);

/* lambda_c = 2 - (5/2) alpha, valid for 0 <= alpha <= 0.8. */
LMGQ_API int lmgq_critical_coupling(double alpha, double* lambda_c);

/* ----------------------------------------------------------------- tables */

LMGQ_API int64_t lmgq_table_rows(const lmgq_table* table);
LMGQ_API int32_t lmgq_table_cols(const lmgq_table* table);
LMGQ_API const char* lmgq_table_column_name(const lmgq_table* table, int32_t col);
/* Out-of-range access returns NaN. */
LMGQ_API double lmgq_table_value(const lmgq_table* table, int64_t row, int32_t col);
LMGQ_API int32_t lmgq_table_meta_count(const lmgq_table* table);
LMGQ_API const char* lmgq_table_meta_key(const lmgq_table* table, int32_t index);
LMGQ_API const char* lmgq_table_meta_value(const lmgq_table* table, int32_t index);
LMGQ_API const char* lmgq_table_meta_get(const lmgq_table* table, const char* key);
LMGQ_API int lmgq_table_set_meta(lmgq_table* table, const char* key, const char* value);
LMGQ_API int lmgq_table_write(const lmgq_table* table, const char* path, int32_t format);
LMGQ_API void lmgq_table_free(lmgq_table* table);

/* ------------------------------------------------------------ experiments */

/* Environment level curves E_n(alpha) and their second derivative.
 * parity: 0 = even block only, 1 = odd only, 2 = both. */
typedef struct {
    int32_t n;
    int32_t parity;
    double alpha_min, alpha_max, alpha_step;
} lmgq_spectrum_params;
LMGQ_API int lmgq_run_spectrum(const lmgq_spectrum_params* params, lmgq_table** levels,
                               lmgq_table** curvature);

/* Density of states: exact-diagonalization histogram plus the semiclassical
 * phase-space profile on the same energy grid. */
typedef struct {
    int32_t n;
    double alpha;
    int32_t bins;
    int32_t theta_points, phi_points;   /* <= 0 selects the 4000 x 4000 default */
} lmgq_dos_params;
LMGQ_API int lmgq_run_dos(const lmgq_dos_params* params, lmgq_table** histogram,
                          lmgq_table** classical);

/* Strength function / A(E) profile and the decoherence-factor time series for
 * one quench. dt <= 0 selects the default resolution rule. */
typedef struct {
    int32_t n;
    double alpha;
    double lambda;
    double tau_e;
    int32_t frame;
    int32_t bins;
    double dt;
} lmgq_quench_params;
LMGQ_API int lmgq_run_quench(const lmgq_quench_params* params, lmgq_table** strength,
                             lmgq_table** series);

typedef struct {
    int32_t n;
    double alpha;
    double tau_e;
    double theta;
    int32_t frame;
    double lambda_min, lambda_max, lambda_step;
    double dt;          /* <= 0: default resolution rule */
    int32_t workers;    /* <= 0: LMGQ_WORKERS env or hardware concurrency */
} lmgq_scan_params;
LMGQ_API int lmgq_run_qsl_scan(const lmgq_scan_params* params, lmgq_table** scan);
LMGQ_API int lmgq_run_nm_scan(const lmgq_scan_params* params, lmgq_table** scan);

typedef struct {
    double alpha;
    double tau_e;
    double theta;
    int32_t frame;
    double lambda;      /* <= 0: analytic critical coupling for alpha */
    int32_t n_min, n_max, n_step;
    double dt;
    int32_t workers;
} lmgq_scaling_params;
LMGQ_API int lmgq_run_scaling(const lmgq_scaling_params* params, lmgq_table** scaling);

typedef struct {
    int32_t n;
    double tau_e;
    double theta;
    int32_t frame;
    double alpha_min, alpha_max, alpha_step;
    double lambda_min, lambda_max, lambda_step;
    double dt;
    int32_t workers;
} lmgq_locus_params;
LMGQ_API int lmgq_run_critical_locus(const lmgq_locus_params* params, lmgq_table** locus);

typedef struct {
    int32_t n;
    double alpha;
    double theta;
    int32_t frame;
    double tau_min, tau_max, tau_step;
    double lambda_min, lambda_max, lambda_step;
    double dt;
    int32_t workers;
} lmgq_heatmap_params;
LMGQ_API int lmgq_run_heatmap(const lmgq_heatmap_params* params, lmgq_table** grid,
                              lmgq_table** rowmax);

#ifdef __cplusplus
}
#endif

#endif /* LMGQ_H */
