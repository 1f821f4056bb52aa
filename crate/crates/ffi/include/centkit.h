#ifndef CENTKIT_H
#define CENTKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Group selector for [`centkit_perm_cent_equal`].
 */
typedef enum CentkitGroup {
  CENTKIT_GROUP_SYMMETRIC = 0,
  CENTKIT_GROUP_ALTERNATING = 1,
} CentkitGroup;

/*
 Status codes. Negative values are ABI misuse, positive values mirror
 the CLI exit codes.
 */
typedef enum CentkitStatus {
  CENTKIT_STATUS_OK = 0,
  /*
   A decision procedure answered "no".
   */
  CENTKIT_STATUS_FALSE = 1,
  CENTKIT_STATUS_PARSE_ERROR = 2,
  CENTKIT_STATUS_UNSUPPORTED_FIELD = 3,
  CENTKIT_STATUS_FAILED = 4,
  CENTKIT_STATUS_PANIC = 5,
  CENTKIT_STATUS_NULL_POINTER = -1,
  CENTKIT_STATUS_INVALID_UTF8 = -2,
} CentkitStatus;

/*
 Opaque matrix handle.
 */
typedef struct CentkitMatrix CentkitMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a matrix from its JSON form `{"field": ..., "rows": [...]}`.
 On success `*out` receives a handle owned by the caller.

 # Safety
 `json` must be a valid NUL-terminated string; `out` must be writable.
 */
enum CentkitStatus centkit_matrix_from_json(const char *json, struct CentkitMatrix **out);

/*
 # Safety
 `m` must be null or a handle from [`centkit_matrix_from_json`] not yet freed.
 */
void centkit_matrix_free(struct CentkitMatrix *m);

/*
 Number of rows of a matrix handle, or 0 for null.

 # Safety
 `m` must be null or a live handle.
 */
size_t centkit_matrix_rows(const struct CentkitMatrix *m);

/*
 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum CentkitStatus centkit_matrix_to_json(const struct CentkitMatrix *m, char **out);

/*
 Cycle, Green and generalized types of a matrix.

 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum CentkitStatus centkit_mtype(const struct CentkitMatrix *m, char **out);

/*
 Decides conjugacy of the centralizers of `x` and `y`. Returns
 [`CentkitStatus::Ok`] when conjugate and [`CentkitStatus::False`] when
 not; the certificate is written to `out` in both cases.

 # Safety
 `x`, `y` must be live handles; `out` must be null or writable.
 */
enum CentkitStatus centkit_centconj(const struct CentkitMatrix *x,
                                    const struct CentkitMatrix *y,
                                    char **out);

/*
 Decides whether two permutations (cycle notation or JSON image arrays)
 have equal centralizers in `S_n` or `A_n`. `n` of 0 means the largest
 point mentioned. `group` is a [`CentkitGroup`] value.

 # Safety
 `g`, `h` must be valid NUL-terminated strings; `out` must be null or writable.
 */
enum CentkitStatus centkit_perm_cent_equal(const char *g,
                                           const char *h,
                                           size_t n,
                                           int group,
                                           char **out);

/*
 Runs a verification suite. `scale` of 0 selects the suite default,
 `jobs` of 0 uses every core. Returns [`CentkitStatus::False`] when the
 suite found counterexamples.

 # Safety
 `suite` must be a valid NUL-terminated string; `out` must be null or writable.
 */
enum CentkitStatus centkit_verify(const char *suite,
                                  uint64_t seed,
                                  size_t scale,
                                  size_t jobs,
                                  char **out);

/*
 Releases a string returned through an `out` parameter.

 # Safety
 `s` must be null or a string produced by this library, not yet freed.
 */
void centkit_string_free(char *s);

/*
 Library version as a static NUL-terminated string.
 */
const char *centkit_version(void);

/*
 Nonzero when `status` denotes an error rather than a verdict.
 */
int centkit_status_is_error(enum CentkitStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CENTKIT_H */
