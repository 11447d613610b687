#ifndef UNMATING_H
#define UNMATING_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UnmatingOutcome {
  UNMATING_OUTCOME_EQUATOR = 0,
  UNMATING_OUTCOME_OR_EQUATOR = 1,
  UNMATING_OUTCOME_SPLITS = 2,
  UNMATING_OUTCOME_NOT_ISOTOPIC = 3,
  UNMATING_OUTCOME_INESSENTIAL = 4,
  UNMATING_OUTCOME_PARTITION_INCOMPATIBLE = 5,
} UnmatingOutcome;

typedef enum UnmatingStatus {
  UNMATING_STATUS_OK = 0,
  UNMATING_STATUS_NULL_POINTER = 1,
  UNMATING_STATUS_INVALID_ARGUMENT = 2,
  UNMATING_STATUS_UNKNOWN_ID = 3,
  // Root finding, orbit budget or branch matching failed.
  UNMATING_STATUS_NUMERICAL = 4,
  // The curve passes too close to the postcritical set.
  UNMATING_STATUS_BAD_CURVE = 5,
  // The output buffer is too small; the required length was written.
  UNMATING_STATUS_BUFFER_TOO_SMALL = 6,
  UNMATING_STATUS_INTERNAL = 7,
} UnmatingStatus;

// Opaque sampled Jordan curve.
typedef struct UnmatingCurve UnmatingCurve;

// Opaque rational map.
typedef struct UnmatingMap UnmatingMap;

// A point of the sphere; `is_infinity` is 1 for ∞, in which case `re` and
// `im` are zero.
typedef struct UnmatingPoint {
  double re;
  double im;
  uint8_t is_infinity;
} UnmatingPoint;

typedef struct UnmatingVerdict {
  enum UnmatingOutcome outcome;
  // Number of preimage components; 1 unless the outcome is `Splits`.
  uintptr_t components;
  uint32_t level;
} UnmatingVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *unmating_last_error(void);

// Library version as a static NUL-terminated string.
const char *unmating_version(void);

// Looks up a catalog map such as `omega+2` or `capture:3/2`.
//
// # Safety
// `id` must be a NUL-terminated string and `out` a writable pointer.
enum UnmatingStatus unmating_map_from_catalog(const char *id, struct UnmatingMap **out);

// Builds `num / den` from coefficient arrays in increasing degree.
//
// # Safety
// `num` and `den` must point to `num_len` and `den_len` readable
// [`UnmatingPoint`]s (used as complex coefficients; `is_infinity` is
// ignored), and `out` must be writable.
enum UnmatingStatus unmating_map_from_coefficients(const struct UnmatingPoint *num,
                                                   uintptr_t num_len,
                                                   const struct UnmatingPoint *den,
                                                   uintptr_t den_len,
                                                   struct UnmatingMap **out);

// # Safety
// `map` must be null or a handle from this library not yet freed.
void unmating_map_free(struct UnmatingMap *map);

// # Safety
// `map` must be a live handle.
uintptr_t unmating_map_degree(const struct UnmatingMap *map);

// # Safety
// `map` must be a live handle and `out` writable.
enum UnmatingStatus unmating_map_evaluate(const struct UnmatingMap *map,
                                          struct UnmatingPoint z,
                                          struct UnmatingPoint *out);

// Writes the postcritical points and the index of each point's image.
//
// On success `*len` is the number of points. When `capacity` is too small
// nothing but `*len` is written and `BufferTooSmall` is returned, so a
// call with `capacity = 0` queries the size.
//
// # Safety
// `points` and `successors` must hold `capacity` writable elements (they
// may be null when `capacity` is 0); `len` must be writable.
enum UnmatingStatus unmating_postcritical_set(const struct UnmatingMap *map,
                                              struct UnmatingPoint *points,
                                              uintptr_t *successors,
                                              uintptr_t capacity,
                                              uintptr_t *len);

// Circle `|z - center| = radius` sampled at `resolution` points.
//
// # Safety
// `out` must be writable.
enum UnmatingStatus unmating_curve_circle(struct UnmatingPoint center,
                                          double radius,
                                          uintptr_t resolution,
                                          struct UnmatingCurve **out);

// One of the figure curves `fig4` .. `fig20`.
//
// # Safety
// `id` must be a NUL-terminated string and `out` writable.
enum UnmatingStatus unmating_curve_from_catalog(const char *id,
                                                uintptr_t resolution,
                                                struct UnmatingCurve **out);

// # Safety
// `curve` must be null or a handle from this library not yet freed.
void unmating_curve_free(struct UnmatingCurve *curve);

// Equator verdict of `curve` for the `level`-th iterate of `map`.
//
// # Safety
// `map` and `curve` must be live handles and `out` writable.
enum UnmatingStatus unmating_classify(const struct UnmatingMap *map,
                                      const struct UnmatingCurve *curve,
                                      uint32_t level,
                                      struct UnmatingVerdict *out);

// Capture parameters of one generation (2 to 8), with the same buffer
// protocol as [`unmating_postcritical_set`].
//
// # Safety
// `params` must hold `capacity` writable elements (or be null when
// `capacity` is 0); `len` must be writable.
enum UnmatingStatus unmating_capture_parameters(uint32_t generation,
                                                struct UnmatingPoint *params,
                                                uintptr_t capacity,
                                                uintptr_t *len);

// Size of the semigroup generated by self-maps of four points, each given
// as four zero-based images (`images[4 * i .. 4 * i + 4]`).
//
// # Safety
// `images` must point to `4 * count` readable bytes and `size` be writable.
enum UnmatingStatus unmating_semigroup_closure_size(const uint8_t *images,
                                                    uintptr_t count,
                                                    uintptr_t *size);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* UNMATING_H */
