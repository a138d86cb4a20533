/*
 * fdpn C API.
 *
 * Opaque handles over the C++ simulator. Every fallible call returns an
 * fdpn_status; on failure, fdpn_last_error() describes the most recent error
 * on the calling thread. Strings returned through char** are owned by the
 * caller and released with fdpn_string_free().
 */
#ifndef FDPN_FDPN_H
#define FDPN_FDPN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FDPN_BUILDING_LIBRARY)
#    define FDPN_API __declspec(dllexport)
#  else
#    define FDPN_API __declspec(dllimport)
#  endif
#else
#  define FDPN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdpn_status {
    FDPN_OK = 0,
    FDPN_ERR_ARGUMENT = 1, /* null handle, out-of-range index */
    FDPN_ERR_CONFIG = 2,   /* malformed or inconsistent configuration */
    FDPN_ERR_INPUT = 3,    /* data violating an operation's preconditions */
    FDPN_ERR_IO = 4,       /* unreadable input or unwritable output */
    FDPN_ERR_METRIC = 5,   /* metric undefined for the data */
    FDPN_ERR_INTERNAL = 6
} fdpn_status;

typedef enum fdpn_sweep_kind {
    FDPN_SWEEP_BETA = 0,
    FDPN_SWEEP_ATTEN = 1,
    FDPN_SWEEP_WINDOW = 2
} fdpn_sweep_kind;

typedef struct fdpn_config fdpn_config;
typedef struct fdpn_sweep fdpn_sweep;

FDPN_API const char* fdpn_version(void);
FDPN_API const char* fdpn_last_error(void);
FDPN_API void fdpn_string_free(char* s);

/* Configuration ---------------------------------------------------------- */

FDPN_API fdpn_status fdpn_config_load(const char* path, fdpn_config** out);
FDPN_API fdpn_status fdpn_config_parse(const char* text, fdpn_config** out);
FDPN_API void fdpn_config_free(fdpn_config* cfg);
/* Overrides a single key, e.g. ("run.seed", "42"). */
FDPN_API fdpn_status fdpn_config_set(fdpn_config* cfg, const char* key, const char* value);
FDPN_API fdpn_status fdpn_config_set_seed(fdpn_config* cfg, uint64_t seed);
FDPN_API fdpn_status fdpn_config_set_threads(fdpn_config* cfg, unsigned threads);

/* Sweeps ----------------------------------------------------------------- */

FDPN_API fdpn_status fdpn_sweep_run(const fdpn_config* cfg, fdpn_sweep_kind kind, fdpn_sweep** out);
FDPN_API void fdpn_sweep_free(fdpn_sweep* sweep);
FDPN_API size_t fdpn_sweep_rows(const fdpn_sweep* sweep);
FDPN_API size_t fdpn_sweep_columns(const fdpn_sweep* sweep);
/* Column label ("wf", "only_cpe", "lpf", ...); NULL when out of range. Owned by the sweep. */
FDPN_API const char* fdpn_sweep_column_name(const fdpn_sweep* sweep, size_t col);
FDPN_API fdpn_status fdpn_sweep_x(const fdpn_sweep* sweep, size_t row, double* x);
FDPN_API fdpn_status fdpn_sweep_value(const fdpn_sweep* sweep, size_t row, size_t col, double* mean_db,
                                      double* ci95_db);
FDPN_API fdpn_status fdpn_sweep_csv(const fdpn_sweep* sweep, char** out_text);
FDPN_API fdpn_status fdpn_sweep_write_csv(const fdpn_sweep* sweep, const char* path);

/* Single trial, complexity table, self-test ------------------------------ */

FDPN_API fdpn_status fdpn_single_write_csv(const fdpn_config* cfg, const char* path);
FDPN_API fdpn_status fdpn_opcount_table(const fdpn_config* cfg, char** out_text);
/* Returns FDPN_OK when every check passed; *out_report lists each check. */
FDPN_API fdpn_status fdpn_selftest(char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* FDPN_FDPN_H */
