#ifndef STEINITZ_H
#define STEINITZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum StzStatus {
  STZ_STATUS_OK = 0,
  /**
   * A checked invariant failed.
   */
  STZ_STATUS_PROPERTY = 1,
  /**
   * Malformed input, bad arguments or a null pointer.
   */
  STZ_STATUS_USAGE = 2,
  /**
   * A search exceeded its budget.
   */
  STZ_STATUS_BUDGET = 3,
  /**
   * The instance has no feasible point.
   */
  STZ_STATUS_INFEASIBLE = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  STZ_STATUS_INTERNAL = 5,
} StzStatus;

typedef enum StzNorm {
  STZ_NORM_L1 = 0,
  STZ_NORM_LINF = 1,
} StzNorm;

/**
 * Result of a colorful rearrangement.
 */
typedef struct StzColorfulCert StzColorfulCert;

/**
 * Colored family of rational vectors.
 */
typedef struct StzFamily StzFamily;

/**
 * Block-structured integer program.
 */
typedef struct StzFourBlock StzFourBlock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The caller
 * owns the result.
 */
char *stz_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void stz_string_free(char *s);

/**
 * Parses a family file (`colorful d n m norm` format).
 *
 * # Safety
 * `src` must be a NUL-terminated string, `out` writable.
 */
enum StzStatus stz_family_parse(const char *src, struct StzFamily **out);

/**
 * Seeded zero-sum family with `n` colors of `m` vectors in dimension `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum StzStatus stz_family_generate(size_t d,
                                   size_t n,
                                   size_t m,
                                   enum StzNorm norm,
                                   uint64_t seed,
                                   struct StzFamily **out);

/**
 * # Safety
 * `fam` must be writable pointers or null.
 */
enum StzStatus stz_family_shape(const struct StzFamily *fam, size_t *d, size_t *n, size_t *m);

/**
 * Family in file format.
 *
 * # Safety
 * `fam` must be a live handle, `out` writable.
 */
enum StzStatus stz_family_to_string(const struct StzFamily *fam, char **out);

/**
 * # Safety
 * `fam` must come from this library or be null.
 */
void stz_family_free(struct StzFamily *fam);

/**
 * Reorders every color; with `affine` nonzero the family need not sum
 * to zero and prefixes are measured against the average drift.
 *
 * # Safety
 * `fam` must be a live handle, `out` writable.
 */
enum StzStatus stz_colorful_rearrange(const struct StzFamily *fam,
                                      bool affine,
                                      struct StzColorfulCert **out);

/**
 * # Safety
 * `cert` must be a live handle.
 */
size_t stz_cert_colors(const struct StzColorfulCert *cert);

/**
 * Copies the 0-based permutation of `color` into `buf`, which must hold
 * `len` entries; `len` must equal the color length.
 *
 * # Safety
 * `cert` must be a live handle and `buf` valid for `len` writes.
 */
enum StzStatus stz_cert_permutation(const struct StzColorfulCert *cert,
                                    size_t color,
                                    size_t *buf,
                                    size_t len);

/**
 * Largest prefix norm of the returned order, as an exact rational string.
 *
 * # Safety
 * `cert` must be a live handle, `out` writable.
 */
enum StzStatus stz_cert_achieved_max(const struct StzColorfulCert *cert, char **out);

/**
 * Guaranteed bound for the family, as an exact rational string.
 *
 * # Safety
 * `cert` must be a live handle, `out` writable.
 */
enum StzStatus stz_cert_certified_bound(const struct StzColorfulCert *cert, char **out);

/**
 * # Safety
 * `cert` must come from this library or be null.
 */
void stz_cert_free(struct StzColorfulCert *cert);

/**
 * Parses a block program file (`fourblock s0 s t0 t n delta` format).
 *
 * # Safety
 * `src` must be a NUL-terminated string, `out` writable.
 */
enum StzStatus stz_fourblock_parse(const char *src, struct StzFourBlock **out);

/**
 * Seeded random block program with entries bounded by `delta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum StzStatus stz_fourblock_generate(size_t s0,
                                      size_t s,
                                      size_t t0,
                                      size_t t,
                                      size_t n,
                                      int64_t delta,
                                      uint64_t seed,
                                      struct StzFourBlock **out);

/**
 * # Safety
 * `inst` must be a live handle, `out` writable.
 */
enum StzStatus stz_fourblock_to_string(const struct StzFourBlock *inst, char **out);

/**
 * Proximity threshold of the instance, as an exact integer string.
 *
 * # Safety
 * `inst` must be a live handle, `out` writable.
 */
enum StzStatus stz_fourblock_xi(const struct StzFourBlock *inst, char **out);

/**
 * Solves the program within `radius` of its LP optimum (null radius: the
 * proximity threshold). On success `out` receives a `key: value` report
 * whose `status` line is `optimal`, `infeasible`, `lp-unbounded` or
 * `no-integer-in-radius`.
 *
 * # Safety
 * `inst` must be a live handle, `radius` null or a NUL-terminated
 * string, `out` writable.
 */
enum StzStatus stz_fourblock_solve(const struct StzFourBlock *inst,
                                   const char *radius,
                                   uint64_t budget,
                                   char **out);

/**
 * # Safety
 * `inst` must come from this library or be null.
 */
void stz_fourblock_free(struct StzFourBlock *inst);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEINITZ_H */
