#ifndef DYADIC_TENT_H
#define DYADIC_TENT_H

/* C interface to the dyadic tent-space library.
 *
 * Every function returns a dt_status. On failure dt_last_error() describes
 * the problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with dt_string_free. Infinite exponents are passed as
 * HUGE_VAL. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DYADIC_TENT_BUILDING)
#    define DT_API __declspec(dllexport)
#  else
#    define DT_API __declspec(dllimport)
#  endif
#else
#  define DT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dt_status {
  DT_OK = 0,
  DT_INVALID_ARGUMENT = 1,  /* bad value, exponent, index or malformed input */
  DT_DOMAIN_ERROR = 2,      /* well-formed input outside the supported domain */
  DT_LIMIT_EXCEEDED = 3,    /* brute force or exact search refused */
  DT_NULL_POINTER = 4,
  DT_INTERNAL_ERROR = 5
} dt_status;

typedef struct dt_sequence dt_sequence;
typedef struct dt_step_function dt_step_function;
typedef struct dt_family dt_family;

DT_API const char* dt_version(void);
DT_API const char* dt_last_error(void);
DT_API void dt_string_free(char* s);

/* Sequences indexed by dyadic intervals (level j, position k). */
DT_API dt_status dt_sequence_create(dt_sequence** out);
DT_API dt_status dt_sequence_from_json(const char* json, dt_sequence** out);
DT_API dt_status dt_sequence_to_json(const dt_sequence* g, char** json);
DT_API dt_status dt_sequence_set(dt_sequence* g, unsigned level, uint64_t index, double value);
DT_API dt_status dt_sequence_get(const dt_sequence* g, unsigned level, uint64_t index, double* value);
DT_API dt_status dt_sequence_depth(const dt_sequence* g, unsigned* depth);
DT_API void dt_sequence_destroy(dt_sequence* g);

DT_API dt_status dt_xpq_norm(const dt_sequence* g, double p, double q, double* value);
/* {"value": ..., "witness": [{"level","index"}, ...]} */
DT_API dt_status dt_xpq_norm_report(const dt_sequence* g, double p, double q, char** json);
DT_API dt_status dt_xp_infty_brute_force(const dt_sequence* g, double p, unsigned limit, double* value);
DT_API dt_status dt_cone_sup(const dt_sequence* g, double q, double* value);
DT_API dt_status dt_pairing(const dt_sequence* f, const dt_sequence* g, double* value);
DT_API dt_status dt_dual_extremizer(const dt_sequence* g, double p, double q, dt_sequence** out);

/* Step functions on [0,1) with 2^depth equal cells. */
DT_API dt_status dt_step_function_create(unsigned depth, const double* values, size_t count, dt_step_function** out);
DT_API void dt_step_function_destroy(dt_step_function* f);
DT_API dt_status dt_haar_transform(const dt_step_function* f, double* mean, dt_sequence** coefficients);
/* kind: 0 = L1 mean oscillation, 1 = L2 direct, 2 = L2 from Haar coefficients */
DT_API dt_status dt_oscillation(const dt_step_function* f, unsigned level, uint64_t index, int kind, double* value);
/* kind: 0 = L1, 1 = L2 */
DT_API dt_status dt_jnp_norm(const dt_step_function* f, double p, int kind, double* value);
DT_API dt_status dt_sl_infinity(const dt_step_function* f, double* value);
DT_API dt_status dt_haar_multiplier_norm(const dt_sequence* a, double* value);
/* young: 0 = t*sqrt(1 + log+ t), 1 = exp(t^2) - 1 */
DT_API dt_status dt_luxemburg_norm(const dt_step_function* f, int young, double* value);

/* Finite families of translated and dilated convex bodies. */
DT_API dt_status dt_family_from_json(const char* json, dt_family** out);
DT_API void dt_family_destroy(dt_family* family);
DT_API dt_status dt_family_total_overlap(const dt_family* family, double* value);
DT_API dt_status dt_family_color_count(const dt_family* family, int* colors);
DT_API dt_status dt_family_s1(const dt_family* family, double* value);
DT_API dt_status dt_family_t1(const dt_family* family, double* value);

/* Runs a named experiment. config_json may be NULL for defaults; an "input"
 * path is read when "input_data" is absent. exit_code
 * receives 0 (no violations), 1 (violations) or 2 (unusable input). */
DT_API dt_status dt_run(const char* command, const char* config_json, char** report_json, int* exit_code);
/* Re-runs the command and config recorded in an earlier report. */
DT_API dt_status dt_replay(const char* report, char** report_json, int* exit_code);
/* Flattens a report into "path,value" lines. */
DT_API dt_status dt_report_to_csv(const char* report, char** csv);

#ifdef __cplusplus
}
#endif

#endif
