#ifndef HERMSIGN_H
#define HERMSIGN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_NULL_POINTER = 1,
  HS_STATUS_INVALID_ARGUMENT = 2,
  HS_STATUS_NOT_HERMITIAN = 3,
  HS_STATUS_ZERO_MATRIX = 4,
  HS_STATUS_NO_CONVERGENCE = 5,
  HS_STATUS_INCONSISTENT = 6,
  HS_STATUS_BUFFER_TOO_SMALL = 7,
  HS_STATUS_PANIC = 8,
} HsStatus;

typedef enum HsInit {
  HS_INIT_RANDOM = 0,
  HS_INIT_TRIPLE = 1,
} HsInit;

typedef enum HsClass {
  HS_CLASS_POSITIVE_DEFINITE = 0,
  HS_CLASS_POSITIVE_SEMI_DEFINITE = 1,
  HS_CLASS_NEGATIVE_DEFINITE = 2,
  HS_CLASS_NEGATIVE_SEMI_DEFINITE = 3,
  HS_CLASS_INDEFINITE = 4,
  HS_CLASS_UNCLASSIFIED = 5,
} HsClass;

typedef enum HsStage {
  HS_STAGE_CLASSICAL = 0,
  HS_STAGE_QUANTUM = 1,
} HsStage;

/**
 * Opaque Hermitian matrix.
 */
typedef struct HsMatrix HsMatrix;

/**
 * Quantum stage settings; obtain defaults from `hs_config_default`.
 */
typedef struct HsConfig {
  uint32_t n;
  uint32_t trials;
  uint32_t shots;
  double delta;
  double guard;
  enum HsInit init;
  uint64_t seed;
  double ztol;
} HsConfig;

typedef struct HsBounds {
  double r;
  double s;
  double low_min;
  double low_max;
  double high_min;
  double high_max;
} HsBounds;

typedef struct HsVerdict {
  enum HsClass definiteness;
  enum HsStage stage;
  /**
   * Mean `<σ_z>` over trials; NaN when the classical stage decided.
   */
  double mean_sigma;
  bool refined;
} HsVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a matrix from `dim * dim * 2` doubles in row-major `(re, im)` order.
 * The input is validated for Hermiticity with relative tolerance `atol`.
 *
 * # Safety
 * `entries` must point to `2 * dim * dim` readable doubles and `out` to a
 * writable handle slot.
 */
enum HsStatus hs_matrix_new(size_t dim, const double *entries, double atol, struct HsMatrix **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from `hs_matrix_new` not yet freed.
 */
void hs_matrix_free(struct HsMatrix *m);

/**
 * Dimension of the matrix, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t hs_matrix_dim(const struct HsMatrix *m);

struct HsConfig hs_config_default(void);

/**
 * Trace bounds on the extreme eigenvalues.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HsStatus hs_bounds(const struct HsMatrix *m, struct HsBounds *out);

/**
 * Trace test only; may return `HS_CLASS_UNCLASSIFIED`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HsStatus hs_classify_classical(const struct HsMatrix *m, double ztol, enum HsClass *out);

/**
 * Trace test, then phase estimation when the trace test is inconclusive.
 * With `refine`, a quantum positive semi-definite verdict is split by also
 * classifying `-M`.
 *
 * # Safety
 * `m` and `cfg` must be valid pointers and `out` writable.
 */
enum HsStatus hs_classify_hybrid(const struct HsMatrix *m,
                                 const struct HsConfig *cfg,
                                 bool refine,
                                 struct HsVerdict *out);

/**
 * Writes the `2^n` outcome probabilities for a single phase `theta`.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum HsStatus hs_single_phase_distribution(double theta, uint32_t n, double *out, size_t len);

/**
 * Message describing the outcome of the most recent call on this thread;
 * empty after a success. Valid until the next call on the same thread.
 */
const char *hs_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMSIGN_H */
