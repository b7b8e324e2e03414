#ifndef ARITHGRAPH_H
#define ARITHGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArithFamily {
  ARITH_FAMILY_PATH = 0,
  ARITH_FAMILY_CYCLE = 1,
  ARITH_FAMILY_STAR = 2,
  ARITH_FAMILY_COMPLETE = 3,
  ARITH_FAMILY_WHEEL = 4,
} ArithFamily;

typedef enum ArithStatus {
  ARITH_STATUS_OK = 0,
  ARITH_STATUS_NULL_POINTER = 1,
  ARITH_STATUS_BUFFER_TOO_SMALL = 2,
  ARITH_STATUS_DIMENSION_MISMATCH = 3,
  ARITH_STATUS_INVALID_MATRIX = 4,
  ARITH_STATUS_INVALID_GRAPH = 5,
  ARITH_STATUS_REDUCIBLE_MATRIX = 6,
  ARITH_STATUS_NOT_Z_MATRIX = 7,
  ARITH_STATUS_KERNEL_MISMATCH = 8,
  ARITH_STATUS_NOT_A_STRUCTURE = 9,
  ARITH_STATUS_UNSUPPORTED_FAMILY = 10,
  ARITH_STATUS_PRECONDITION_VIOLATION = 11,
  ARITH_STATUS_OVERFLOW = 12,
  ARITH_STATUS_OUT_OF_RANGE = 13,
  ARITH_STATUS_INVALID_ARGUMENT = 14,
  ARITH_STATUS_PANIC = 15,
} ArithStatus;

typedef enum ArithWheelCase {
  ARITH_WHEEL_CASE_ALL_ONES = 0,
  ARITH_WHEEL_CASE_CASE1 = 1,
  ARITH_WHEEL_CASE_CASE2 = 2,
  ARITH_WHEEL_CASE_CASE3 = 3,
} ArithWheelCase;

// Opaque square integer matrix.
typedef struct ArithMatrix ArithMatrix;

// Opaque sorted set of structures.
typedef struct ArithStructureSet ArithStructureSet;

typedef struct ArithMatrixClass {
  bool is_z;
  bool is_m;
  bool is_almost_nonsingular_m;
  bool is_irreducible;
} ArithMatrixClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. Valid until the next call on this thread.
const char *arith_last_error(void);

// Matrix of dimension `n` from `n * n` row-major entries.
//
// # Safety
// `entries` must point to `n * n` readable values; `out` must be writable.
enum ArithStatus arith_matrix_new(size_t n, const int64_t *entries, struct ArithMatrix **out);

// Adjacency matrix of a named graph family.
//
// # Safety
// `out` must be writable.
enum ArithStatus arith_graph_adjacency(enum ArithFamily f, size_t n, struct ArithMatrix **out);

// # Safety
// `m` must be null or a handle from this library that has not been freed.
void arith_matrix_free(struct ArithMatrix *m);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum ArithStatus arith_matrix_dim(const struct ArithMatrix *m, size_t *out);

// Exact determinant; `Overflow` if it does not fit in 64 bits.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum ArithStatus arith_det(const struct ArithMatrix *m, int64_t *out);

// # Safety
// `a` must be a live handle; `d` and `r` must hold `len` values; `out` must be writable.
enum ArithStatus arith_is_arithmetical(const struct ArithMatrix *a,
                                       const uint64_t *d,
                                       const uint64_t *r,
                                       size_t len,
                                       bool *out);

// Writes `d` into `out_d` (length `len`) and sets `found`; `out_d` is untouched when not found.
//
// # Safety
// `a` must be a live handle; `r` and `out_d` must hold `len` values; `found` must be writable.
enum ArithStatus arith_d_from_r(const struct ArithMatrix *a,
                                const uint64_t *r,
                                size_t len,
                                uint64_t *out_d,
                                bool *found);

// Writes `r` into `out_r` (length `len`) and sets `found`.
//
// # Safety
// `a` must be a live handle; `d` and `out_r` must hold `len` values; `found` must be writable.
enum ArithStatus arith_r_from_d(const struct ArithMatrix *a,
                                const uint64_t *d,
                                size_t len,
                                uint64_t *out_r,
                                bool *found);

// # Safety
// `out` must be writable.
enum ArithStatus arith_enumerate_certified(enum ArithFamily f,
                                           size_t n,
                                           struct ArithStructureSet **out);

// Structures with every `r` entry at most `r_cap`; the result is not certified complete.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum ArithStatus arith_enumerate_bounded(const struct ArithMatrix *a,
                                         uint64_t r_cap,
                                         struct ArithStructureSet **out);

// # Safety
// `s` must be null or a live handle.
void arith_set_free(struct ArithStructureSet *s);

// Number of structures, vertex count and whether the set is certified complete.
//
// # Safety
// `s` must be a live handle; each non-null output pointer must be writable.
enum ArithStatus arith_set_info(const struct ArithStructureSet *s,
                                size_t *count,
                                size_t *vertices,
                                bool *complete);

// Copies structure `index` (canonical order) into `out_d` and `out_r`, each of length `len`
// equal to the vertex count.
//
// # Safety
// `s` must be a live handle; `out_d` and `out_r` must hold `len` values.
enum ArithStatus arith_set_get(const struct ArithStructureSet *s,
                               size_t index,
                               uint64_t *out_d,
                               uint64_t *out_r,
                               size_t len);

// Invariant factors (> 1) of the critical group. `count` receives the number of factors; if it
// exceeds `cap` the status is `BufferTooSmall` and nothing is written to `factors`.
//
// # Safety
// `a` must be a live handle; `d` and `r` must hold `len` values; `factors` must hold `cap`
// values; `count` must be writable.
enum ArithStatus arith_critical_group(const struct ArithMatrix *a,
                                      const uint64_t *d,
                                      const uint64_t *r,
                                      size_t len,
                                      uint64_t *factors,
                                      size_t cap,
                                      size_t *count);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum ArithStatus arith_classify_matrix(const struct ArithMatrix *m, struct ArithMatrixClass *out);

// Classifies the structure on the wheel `W_n` given by `d` (length `n + 1`).
//
// # Safety
// `d` must hold `n + 1` values; `out` must be writable.
enum ArithStatus arith_classify_wheel(size_t n, const uint64_t *d, enum ArithWheelCase *out);

// Rim-rotation orbit of `r` (length `n + 1`) on `W_n`. Orbit members are written back to back
// into `out` (room for `cap` vectors of length `n + 1`); `count` receives the orbit size.
//
// # Safety
// `r` must hold `n + 1` values; `out` must hold `cap * (n + 1)` values; `count` must be
// writable.
enum ArithStatus arith_zn_orbit(size_t n,
                                const uint64_t *r,
                                uint64_t *out,
                                size_t cap,
                                size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARITHGRAPH_H */
