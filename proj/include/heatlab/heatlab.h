#ifndef HEATLAB_H
#define HEATLAB_H

/* C interface to the heat content library.
 *
 * A session holds one problem configuration plus run options. Every call
 * returns a heatlab_status; on failure heatlab_last_error() describes it
 * (thread-local, valid until the next call on the same thread). Strings
 * returned through char** are owned by the caller: release them with
 * heatlab_string_free. */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(HEATLAB_BUILDING)
#    define HEATLAB_API __declspec(dllexport)
#  else
#    define HEATLAB_API __declspec(dllimport)
#  endif
#else
#  define HEATLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as process exit codes for the command-line tool. */
typedef enum heatlab_status {
  HEATLAB_OK = 0,
  HEATLAB_VERDICT_FAIL = 1,
  HEATLAB_CONFIG_ERROR = 2,
  HEATLAB_NUMERIC_ERROR = 3,
  HEATLAB_INVALID_ARGUMENT = 4,
  HEATLAB_INTERNAL_ERROR = 5
} heatlab_status;

typedef struct heatlab_session heatlab_session;

HEATLAB_API const char* heatlab_version(void);
HEATLAB_API const char* heatlab_last_error(void);
HEATLAB_API const char* heatlab_status_name(heatlab_status status);
HEATLAB_API void heatlab_string_free(char* s);

HEATLAB_API heatlab_status heatlab_session_create(heatlab_session** out);
HEATLAB_API void heatlab_session_destroy(heatlab_session* session);

/* Configuration from a JSON file or a JSON string. */
HEATLAB_API heatlab_status heatlab_session_load_file(heatlab_session* session, const char* path);
HEATLAB_API heatlab_status heatlab_session_load_json(heatlab_session* session, const char* text);

/* Overrides the solver resolution (spectral degree or fd2 cell count); 0 keeps the config's. */
HEATLAB_API heatlab_status heatlab_session_set_grid(heatlab_session* session, int resolution);
HEATLAB_API heatlab_status heatlab_session_set_seed(heatlab_session* session, uint64_t seed);
/* Perturbs one universal constant: "a7:*21/20" scales, "a7:+1/10" shifts.
 * Mutations accumulate until heatlab_session_reset_constants. */
HEATLAB_API heatlab_status heatlab_session_mutate(heatlab_session* session, const char* spec);
HEATLAB_API heatlab_status heatlab_session_reset_constants(heatlab_session* session);

/* Output format from the config's output section: "json", "csv" or "" when unset. */
HEATLAB_API heatlab_status heatlab_session_output(const heatlab_session* session, char** path, char** format);

/* beta_0..beta_3 from the closed-form evaluator. */
HEATLAB_API heatlab_status heatlab_theory(heatlab_session* session, double beta[4]);

/* Reports. JSON documents embed config_hash and version. */
HEATLAB_API heatlab_status heatlab_coeffs(heatlab_session* session, char** report);
/* format is "csv" (columns t,beta,err) or "json". */
HEATLAB_API heatlab_status heatlab_simulate(heatlab_session* session, const char* format, char** output);
HEATLAB_API heatlab_status heatlab_fit(heatlab_session* session, char** report);
/* Returns HEATLAB_VERDICT_FAIL (with the report filled in) when any coefficient misses its tolerance. */
HEATLAB_API heatlab_status heatlab_verify(heatlab_session* session, char** report);
/* Exact relation suite over the session's (possibly mutated) constants. */
HEATLAB_API heatlab_status heatlab_relations(heatlab_session* session, char** report);
/* selection is a comma-separated list of check names, or NULL / "" for all. */
HEATLAB_API heatlab_status heatlab_harness(heatlab_session* session, const char* selection, char** report);
/* Comma-separated names of the harness checks. */
HEATLAB_API heatlab_status heatlab_harness_checks(char** names);

#ifdef __cplusplus
}
#endif

#endif /* HEATLAB_H */
