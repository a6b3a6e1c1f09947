#ifndef INEQLAB_H
#define INEQLAB_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(INEQLAB_BUILDING_LIBRARY)
#define INEQLAB_API __declspec(dllexport)
#else
#define INEQLAB_API __declspec(dllimport)
#endif
#else
#define INEQLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ineqlab_status {
  INEQLAB_OK = 0,
  INEQLAB_ERR_DOMAIN = 1,
  INEQLAB_ERR_SINGULARITY = 2,
  INEQLAB_ERR_NUMERICAL = 3,
  INEQLAB_ERR_INCONSISTENCY = 4,
  INEQLAB_ERR_IO = 5,
  INEQLAB_ERR_INTERNAL = 6
} ineqlab_status;

/* m, n, ell = 0 and beta = NaN mean "unset" (beta then defaults to N). */
typedef struct ineqlab_params {
  int N;
  double p;
  int m;
  double R;
  double a;
  double beta;
  double alpha;
  int n;
  int ell;
  double q;
} ineqlab_params;

typedef struct ineqlab_fn ineqlab_fn;
typedef struct ineqlab_table ineqlab_table;
typedef struct ineqlab_config ineqlab_config;

INEQLAB_API const char* ineqlab_version(void);
/* Message of the last failed call on this thread; "" when none. */
INEQLAB_API const char* ineqlab_last_error(void);
INEQLAB_API void ineqlab_params_init(ineqlab_params* params);

INEQLAB_API ineqlab_status ineqlab_constant(const char* kind, const ineqlab_params* params, double* out);

/* Radial functions on a log-uniform grid of `points` nodes. Compact families
   live on the ball B_R, the others on the whole space [1e-8, 1e6].
   param = NaN selects the family default. */
INEQLAB_API ineqlab_status ineqlab_fn_family(const char* family, double param, const ineqlab_params* params, int dim,
                                             size_t points, ineqlab_fn** out);
/* values[i] at r_i = r_min (r_max / r_min)^(i / (count - 1)); is_ball != 0 means the ball B_{r_max}. */
INEQLAB_API ineqlab_status ineqlab_fn_from_values(int dim, double r_min, double r_max, const double* values,
                                                  size_t count, int is_ball, ineqlab_fn** out);
/* Two-column (r, value) text resampled onto ball(dim, R, points). */
INEQLAB_API ineqlab_status ineqlab_fn_read(const char* path, int dim, double R, size_t points, ineqlab_fn** out);
INEQLAB_API void ineqlab_fn_free(ineqlab_fn* fn);
INEQLAB_API size_t ineqlab_fn_size(const ineqlab_fn* fn);
/* Copies nodes and values into caller arrays of ineqlab_fn_size() entries; either may be NULL. */
INEQLAB_API ineqlab_status ineqlab_fn_nodes(const ineqlab_fn* fn, double* r, double* values);

INEQLAB_API ineqlab_status ineqlab_evaluate(const char* ineq, const ineqlab_fn* u, const ineqlab_params* params,
                                            double* lhs, double* rhs, double* deficit);

/* quotient: hardy, sobolev or critical_hardy; init fixes the grid and domain.
   minimizer and iterations may be NULL. */
INEQLAB_API ineqlab_status ineqlab_minimize(const char* quotient, const ineqlab_fn* init, const ineqlab_params* params,
                                            int max_iters, double tol, double* value, ineqlab_fn** minimizer,
                                            int* iterations);

/* u may be NULL except for the improved_* kinds. */
INEQLAB_API ineqlab_status ineqlab_sweep(const char* kind, const ineqlab_params* params, const double* values,
                                         size_t count, const ineqlab_fn* u, ineqlab_table** out);
INEQLAB_API void ineqlab_table_free(ineqlab_table* table);
INEQLAB_API size_t ineqlab_table_rows(const ineqlab_table* table);
INEQLAB_API size_t ineqlab_table_cols(const ineqlab_table* table);
INEQLAB_API const char* ineqlab_table_column(const ineqlab_table* table, size_t col);
INEQLAB_API double ineqlab_table_get(const ineqlab_table* table, size_t row, size_t col);
INEQLAB_API ineqlab_status ineqlab_fit_decay_exponent(const ineqlab_table* table, double* out);
INEQLAB_API ineqlab_status ineqlab_tm_series_radius(int N, double C_probe, double* out);

/* Command runs. Keys are the long CLI flag names. */
INEQLAB_API ineqlab_config* ineqlab_config_new(void);
INEQLAB_API void ineqlab_config_free(ineqlab_config* config);
INEQLAB_API ineqlab_status ineqlab_config_set(ineqlab_config* config, const char* key, const char* value);
INEQLAB_API ineqlab_status ineqlab_config_load(ineqlab_config* config, const char* path);
/* Returns the exit code (0 contracts hold, 1 violated, 2 invalid input or I/O).
   report and summary receive strings to release with ineqlab_string_free; either may be NULL. */
INEQLAB_API int ineqlab_run(const ineqlab_config* config, char** report, char** summary);
/* As ineqlab_run, writing the report to the configured output (stdout when
   unset) and the summary line to stderr. */
INEQLAB_API int ineqlab_execute(const ineqlab_config* config);
INEQLAB_API void ineqlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
