#ifndef QMEAN_H
#define QMEAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum QmStatus {
  QM_STATUS_OK = 0,
  QM_STATUS_NULL_POINTER = 1,
  QM_STATUS_INVALID_ARGUMENT = 2,
  QM_STATUS_CAPACITY = 3,
  QM_STATUS_DOMAIN = 4,
  QM_STATUS_RANGE = 5,
  QM_STATUS_INCONSISTENT = 6,
  QM_STATUS_CONFIG = 7,
  QM_STATUS_IO = 8,
  QM_STATUS_FIT = 9,
  QM_STATUS_PANIC = 10,
} QmStatus;

/*
 Opaque integrand oracle.
 */
typedef struct QmOracle QmOracle;

/*
 Estimator output.
 */
typedef struct QmEstimate {
  double value;
  double target_accuracy;
  uint64_t oracle_queries;
  uint64_t shots;
  uint64_t seed;
  /*
   Solution count for counting estimators, otherwise 0.
   */
  uint64_t count;
  bool has_count;
} QmEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Valid until the
 next call into this library from the same thread.
 */
const char *qm_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *qm_version(void);

/*
 Oracle over a `dims`-dimensional grid with `points_per_axis` points per
 axis, from `len = points_per_axis^dims` values in `[0, 1]` (axis 0 varies
 fastest).

 # Safety
 `values` must point to `len` readable doubles and `out` must be writable.
 */
enum QmStatus qm_oracle_from_values(uint32_t dims,
                                    size_t points_per_axis,
                                    const double *values,
                                    size_t len,
                                    struct QmOracle **out);

/*
 Oracle for a named built-in integrand such as `"linear@1x16"` or `"walk:6:2"`.

 # Safety
 `spec` must be a NUL-terminated string and `out` writable.
 */
enum QmStatus qm_oracle_builtin(const char *spec, struct QmOracle **out);

/*
 Release an oracle. NULL is ignored.

 # Safety
 `oracle` must come from `qm_oracle_*` and not be used afterwards.
 */
void qm_oracle_free(struct QmOracle *oracle);

/*
 Exact grid mean. Charges one query per grid point.

 # Safety
 `oracle` must be a live handle and `out` writable.
 */
enum QmStatus qm_oracle_true_mean(const struct QmOracle *oracle, double *out);

/*
 Queries charged to this oracle so far. Returns 0 for NULL.

 # Safety
 `oracle` must be a live handle or NULL.
 */
uint64_t qm_oracle_queries(const struct QmOracle *oracle);

/*
 Run the estimator named by `tag` (for example `"qm_iterated"` or
 `"qc_fft(64,256,5)"`) at target accuracy `eps`.

 # Safety
 `oracle` must be a live handle, `tag` NUL-terminated, `out` writable.
 */
enum QmStatus qm_estimate(const struct QmOracle *oracle,
                          const char *tag,
                          double eps,
                          uint64_t seed,
                          bool exact_readout,
                          struct QmEstimate *out);

/*
 Run a sweep config file and write its CSV to `out_path`, or to the
 config's `output` when `out_path` is NULL. Cell failures do not fail the
 call; their number is written to `failed_cells` when non-NULL.

 # Safety
 String arguments must be NUL-terminated; count pointers writable or NULL.
 */
enum QmStatus qm_sweep_from_file(const char *config_path,
                                 const char *out_path,
                                 size_t *records,
                                 size_t *failed_cells);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMEAN_H */
