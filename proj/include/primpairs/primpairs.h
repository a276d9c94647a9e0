/* SPDX-License-Identifier: Apache-2.0 */
/*
 * primpairs C API.
 *
 * Every function returns a ppr_status; on failure ppr_last_error() describes
 * the problem for the calling thread. Handles are opaque and owned by the
 * caller once created; release them with the matching _destroy function.
 * Field elements are passed as integer codes: the residue for prime fields,
 * sum c_i p^i for extensions.
 */
#ifndef PRIMPAIRS_H
#define PRIMPAIRS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PPR_BUILDING_LIBRARY)
#    define PPR_API __declspec(dllexport)
#  else
#    define PPR_API __declspec(dllimport)
#  endif
#else
#  define PPR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppr_status {
  PPR_OK = 0,
  PPR_ERR_INVALID_PARAMETERS = 1,
  PPR_ERR_NOT_A_PRIME_POWER = 2,
  PPR_ERR_DIVISION_BY_ZERO = 3,
  PPR_ERR_INVALID_DIVISOR = 4,
  PPR_ERR_TOO_LARGE = 5,
  PPR_ERR_NOT_APPLICABLE = 6,
  PPR_ERR_PRECONDITION_FAILED = 7,
  PPR_ERR_INTERNAL = 8
} ppr_status;

PPR_API const char* ppr_version(void);
PPR_API const char* ppr_status_string(ppr_status status);
/* Message of the last failed call on this thread; "" if none. */
PPR_API const char* ppr_last_error(void);
/* Frees strings returned through char** out-parameters. */
PPR_API void ppr_string_free(char* s);

/* ---- number theory ---------------------------------------------------- */

PPR_API ppr_status ppr_is_prime(uint64_t n, int* out);
/* Decomposes q = p^r; PPR_ERR_NOT_A_PRIME_POWER otherwise. */
PPR_API ppr_status ppr_prime_power(uint64_t q, uint64_t* p, unsigned* r);
/* Writes up to cap distinct primes and exponents of n, ascending; *len gets
 * the full count. */
PPR_API ppr_status ppr_factorize(uint64_t n, uint64_t* primes, unsigned* exponents, size_t cap, size_t* len);
/* theta(m) = phi(m)/m as "num/den". */
PPR_API ppr_status ppr_theta(uint64_t m, char** out);
/* delta_j = 1 - j * sum(1/p) as "num/den". */
PPR_API ppr_status ppr_delta(unsigned j, const uint64_t* primes, size_t n, char** out);

/* ---- finite fields ---------------------------------------------------- */

typedef struct ppr_field ppr_field;

PPR_API ppr_status ppr_field_create(uint64_t q, ppr_field** out);
PPR_API ppr_status ppr_field_create_pr(uint64_t p, unsigned r, ppr_field** out);
PPR_API void ppr_field_destroy(ppr_field* field);

PPR_API ppr_status ppr_field_order(const ppr_field* field, uint64_t* q, uint64_t* p, unsigned* r);
PPR_API ppr_status ppr_field_gamma(const ppr_field* field, uint64_t* out);
/* Modulus coefficients c_0..c_r (c_r = 1); *len gets r + 1. */
PPR_API ppr_status ppr_field_modulus(const ppr_field* field, uint64_t* coeffs, size_t cap, size_t* len);

PPR_API ppr_status ppr_field_add(const ppr_field* field, uint64_t a, uint64_t b, uint64_t* out);
PPR_API ppr_status ppr_field_sub(const ppr_field* field, uint64_t a, uint64_t b, uint64_t* out);
PPR_API ppr_status ppr_field_mul(const ppr_field* field, uint64_t a, uint64_t b, uint64_t* out);
PPR_API ppr_status ppr_field_neg(const ppr_field* field, uint64_t a, uint64_t* out);
PPR_API ppr_status ppr_field_inv(const ppr_field* field, uint64_t a, uint64_t* out);
PPR_API ppr_status ppr_field_pow(const ppr_field* field, uint64_t a, uint64_t e, uint64_t* out);
/* Discrete logarithm to base gamma. */
PPR_API ppr_status ppr_field_log(const ppr_field* field, uint64_t a, uint64_t* out);
PPR_API ppr_status ppr_field_is_primitive(const ppr_field* field, uint64_t a, int* out);
PPR_API ppr_status ppr_field_is_e_free(const ppr_field* field, uint64_t a, uint64_t e, int* out);
/* Number of roots of u a^2 + v (0, 1 or 2). */
PPR_API ppr_status ppr_field_epsilon(const ppr_field* field, uint64_t u, uint64_t v, int* out);

/* ---- reports ---------------------------------------------------------- */

typedef struct ppr_report ppr_report;

typedef enum ppr_format { PPR_FORMAT_JSON = 0, PPR_FORMAT_CSV = 1 } ppr_format;

PPR_API void ppr_report_destroy(ppr_report* report);
PPR_API size_t ppr_report_size(const ppr_report* report);
PPR_API ppr_status ppr_report_q(const ppr_report* report, size_t index, uint64_t* q);
/* 1 when the record needs an explicit check, is not a member, or reports a
 * missing witness. */
PPR_API ppr_status ppr_report_flagged(const ppr_report* report, size_t index, int* flagged);
/* Integer total from the report's totals block. */
PPR_API ppr_status ppr_report_total(const ppr_report* report, const char* key, uint64_t* out);
PPR_API ppr_status ppr_report_set_command(ppr_report* report, const char* command);
PPR_API ppr_status ppr_report_set_timings(ppr_report* report, int enabled);
PPR_API ppr_status ppr_report_render(const ppr_report* report, ppr_format format, char** out);

/* ---- screening -------------------------------------------------------- */

typedef enum ppr_target { PPR_TARGET_T = 0, PPR_TARGET_S = 1 } ppr_target;
typedef enum ppr_policy { PPR_POLICY_SURVEY = 0, PPR_POLICY_ALL = 1 } ppr_policy;

typedef struct ppr_screen_options {
  ppr_target target;
  ppr_policy policy;
  int exhaustive;
  int needs_check_only;
  unsigned jobs;
} ppr_screen_options;

PPR_API void ppr_screen_options_init(ppr_screen_options* options);
/* Prime powers in [lo, hi]. */
PPR_API ppr_status ppr_screen_range(uint64_t lo, uint64_t hi, const ppr_screen_options* options, ppr_report** out);
PPR_API ppr_status ppr_screen_list(const uint64_t* qs, size_t n, const ppr_screen_options* options,
                                   ppr_report** out);
/* One survey row for omega(q - 1) = omega, 1 <= omega <= 8. */
PPR_API ppr_status ppr_survey(unsigned omega, unsigned jobs, ppr_report** out);

typedef enum ppr_threshold { PPR_THRESHOLD_LIHAN = 0, PPR_THRESHOLD_THM2 = 1, PPR_THRESHOLD_THM7_STRONG = 2 } ppr_threshold;
PPR_API ppr_status ppr_auto_threshold(ppr_threshold variant, unsigned* out);

/* ---- verification ----------------------------------------------------- */

typedef enum ppr_set { PPR_SET_T = 0, PPR_SET_S = 1 } ppr_set;
typedef enum ppr_algorithm {
  PPR_ALGO_LOGS = 0,   /* T: algo1 */
  PPR_ALGO_PAIRS = 1,  /* S: algo2 */
  PPR_ALGO_IE = 2,     /* T: inclusion-exclusion, algo3 */
  PPR_ALGO_ORACLE = 3  /* T or S: exhaustive definition check */
} ppr_algorithm;

typedef struct ppr_verify_options {
  ppr_set set;
  ppr_algorithm algorithm;
  unsigned jobs;
} ppr_verify_options;

PPR_API void ppr_verify_options_init(ppr_verify_options* options);
PPR_API ppr_status ppr_verify_range(uint64_t lo, uint64_t hi, const ppr_verify_options* options, ppr_report** out);
PPR_API ppr_status ppr_verify_list(const uint64_t* qs, size_t n, const ppr_verify_options* options,
                                   ppr_report** out);

/* ---- brute-force oracles ---------------------------------------------- */

typedef enum ppr_oracle_kind {
  PPR_ORACLE_N = 0,          /* pairs count, q <= 10^4 */
  PPR_ORACLE_M = 1,          /* single count, q <= 10^6 */
  PPR_ORACLE_COROLLARY6 = 2  /* the four (1, +-1) witness searches, q <= 10^4 */
} ppr_oracle_kind;

typedef struct ppr_oracle_options {
  ppr_oracle_kind kind;
  uint64_t q;
  uint64_t u;
  uint64_t v;
  /* Freeness divisors; 0 means q - 1. N uses e[0..3], M uses e[0..1]. */
  uint64_t e[4];
} ppr_oracle_options;

PPR_API void ppr_oracle_options_init(ppr_oracle_options* options);
PPR_API ppr_status ppr_oracle(const ppr_oracle_options* options, ppr_report** out);

#ifdef __cplusplus
}
#endif

#endif /* PRIMPAIRS_H */
