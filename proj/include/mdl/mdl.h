#ifndef MDL_MDL_H_
#define MDL_MDL_H_

/*
 * C interface to the Moebius dual library.
 *
 * Rationals cross this boundary as strings "num/den" (integers as "5").
 * Every function returns an mdl_status; on failure mdl_last_error() holds
 * a message for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and released with mdl_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define MDL_API __declspec(dllexport)
#else
#  define MDL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 0-4 coincide with the command-line exit codes. */
typedef enum mdl_status {
  MDL_OK = 0,
  MDL_VERIFY_FAILED = 1,
  MDL_INVALID_ARGUMENT = 2,
  MDL_NO_DUAL = 3,
  MDL_KS_FAILED = 4,
  MDL_NOT_NORMALIZABLE = 5,
  MDL_DOMAIN_ERROR = 6,
  MDL_INTERNAL_ERROR = 7
} mdl_status;

typedef enum mdl_map_kind { MDL_MAP_T = 0, MDL_MAP_S = 1 } mdl_map_kind;

typedef enum mdl_format { MDL_FORMAT_JSON = 0, MDL_FORMAT_TEXT = 1 } mdl_format;

/* Opaque system: partition (p1, p2), middle parameter beta, type vector. */
typedef struct mdl_system mdl_system;

MDL_API const char* mdl_version(void);
MDL_API const char* mdl_last_error(void);
MDL_API void mdl_string_free(char* s);

/* type is a three-character sign string such as "+-+". allow_out_of_range
 * admits beta outside (-1, 2] (beta > -1 is always required). */
MDL_API mdl_status mdl_system_create(const char* p1, const char* p2, const char* beta,
                                     const char* type, int allow_out_of_range,
                                     mdl_system** out);
MDL_API mdl_status mdl_system_from_json(const char* json, mdl_system** out);
MDL_API mdl_status mdl_system_to_json(const mdl_system* sys, char** out);
MDL_API void mdl_system_destroy(mdl_system* sys);

/* psi-conjugate system (psi(x) = 1 - x). *out_of_range is set when the
 * reflected beta leaves (-1, 2]. */
MDL_API mdl_status mdl_system_reflect(const mdl_system* sys, mdl_system** out,
                                      int* out_of_range);

/* One step of T or of the jump transformation S in double precision. */
MDL_API mdl_status mdl_forward_map(const mdl_system* sys, mdl_map_kind which, double x,
                                   double* out);

/* Exact determinant of the symmetry system, canonical branch scaling. */
MDL_API mdl_status mdl_det_system(const mdl_system* sys, char** out);

/* Full report. Returns MDL_OK when a density was derived (natural dual or
 * degenerate common-fixed-point case), MDL_NO_DUAL otherwise; the report is
 * written in both cases. */
MDL_API mdl_status mdl_analyze(const mdl_system* sys, mdl_format format, char** out);

/* DET as a polynomial in beta with its rational roots. */
MDL_API mdl_status mdl_detscan(const char* p1, const char* p2, const char* type, char** out_json);

/* Rational points of the conic p1^2 + p2^2 - p1 p2 - p1 = 0 for each
 * parameter t > 1; other values are skipped with a warning. */
MDL_API mdl_status mdl_conic(const char* const* t_values, size_t count, char** out_json);
/* Same, for all t = a/b with 1 < t <= t_max and b <= den_max. */
MDL_API mdl_status mdl_conic_range(const char* t_max, unsigned den_max, char** out_json);

/* MDL_OK when the derived density is exactly invariant, the dual validates
 * and the lifted density is fixed by the transfer operator of T;
 * MDL_VERIFY_FAILED otherwise. The report is written in both cases. */
MDL_API mdl_status mdl_verify(const mdl_system* sys, char** out_json);

typedef struct mdl_sim_config {
  mdl_map_kind map;
  uint64_t iterations;
  uint64_t burn_in;
  uint32_t bins;
  uint64_t seed;
  int has_x0;
  double x0;
  double ks_threshold;
  /* Compare on [restrict_lo, 1] instead of [0, 1] when non-null. */
  const char* restrict_lo;
  uint32_t seeds;
} mdl_sim_config;

MDL_API mdl_sim_config mdl_sim_config_default(void);

/* Orbit simulation against the analytic density. csv_path may be null.
 * Returns MDL_KS_FAILED when the KS distance reaches the threshold and
 * MDL_NOT_NORMALIZABLE when the density has infinite mass on the domain.
 * *ks_out is the worst KS distance, or -1 without an analytic density. */
MDL_API mdl_status mdl_simulate(const mdl_system* sys, const mdl_sim_config* cfg,
                                const char* csv_path, char** summary_json, double* ks_out);

#ifdef __cplusplus
}
#endif

#endif /* MDL_MDL_H_ */
