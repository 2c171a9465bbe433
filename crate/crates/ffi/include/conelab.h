#ifndef CONELAB_H
#define CONELAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum ConelabStatus {
  CONELAB_STATUS_OK = 0,
  // A required pointer argument was null.
  CONELAB_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not UTF-8.
  CONELAB_STATUS_BAD_STRING = 2,
  // Malformed JSON or bytes in a `.catj` buffer.
  CONELAB_STATUS_SYNTAX = 3,
  // A document broke the format or failed validation.
  CONELAB_STATUS_SEMANTIC = 4,
  // No document with the given name and kind.
  CONELAB_STATUS_NOT_FOUND = 5,
  // The search budget ran out.
  CONELAB_STATUS_BUDGET_EXCEEDED = 6,
  // Invalid data, an unknown cell id or mismatched boundaries.
  CONELAB_STATUS_INVALID = 7,
  // The inputs do not meet the operation's precondition.
  CONELAB_STATUS_PRECONDITION = 8,
  CONELAB_STATUS_IO = 9,
  // An internal error; the handle should not be used again.
  CONELAB_STATUS_PANIC = 10,
} ConelabStatus;

// A set of loaded, validated documents.
typedef struct ConelabLibrary ConelabLibrary;

// Cell counts of a double category.
typedef struct ConelabCounts {
  size_t objects;
  size_t horizontals;
  size_t verticals;
  size_t squares;
} ConelabCounts;

// Verdicts of the three homotopy 2-limit checks.
typedef struct ConelabLimitVerdicts {
  // From the definition.
  bool oracle;
  // Through the double category of cones over `H K`.
  bool h;
  // Through the double category of cones over `H̃ K`.
  bool htilde;
} ConelabLimitVerdicts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static NUL-terminated string.
const char *conelab_version(void);

// The message of the last failed call on this thread, or an empty string.
// Valid until the next call on this thread.
const char *conelab_last_error(void);

// Parses and validates a `.catj` buffer into a new library.
//
// # Safety
// `data` must point to `len` readable bytes and `out` must be writable.
enum ConelabStatus conelab_library_load(const uint8_t *data,
                                        size_t len,
                                        bool lax,
                                        struct ConelabLibrary **out);

// Adds the documents of another buffer; they may refer to documents
// already loaded. On failure the library is unchanged.
//
// # Safety
// `lib` must come from [`conelab_library_load`]; `data` must point to `len`
// readable bytes.
enum ConelabStatus conelab_library_add(struct ConelabLibrary *lib,
                                       const uint8_t *data,
                                       size_t len,
                                       bool lax);

// Releases a library. Null is ignored.
//
// # Safety
// `lib` must come from [`conelab_library_load`] and not be used afterwards.
void conelab_library_free(struct ConelabLibrary *lib);

// Cell counts of a double category document.
//
// # Safety
// `lib` must be a live handle, `name` null or a NUL-terminated string, and
// `out` writable.
enum ConelabStatus conelab_double_category_counts(const struct ConelabLibrary *lib,
                                                  const char *name,
                                                  struct ConelabCounts *out);

// Whether every horizontal equivalence of the double category has a
// vertical companion.
//
// # Safety
// As for [`conelab_double_category_counts`].
enum ConelabStatus conelab_is_whi(const struct ConelabLibrary *lib, const char *name, bool *out);

// Whether `H̃ C` is weakly horizontally invariant, for a 2-category `C`.
//
// # Safety
// As for [`conelab_double_category_counts`].
enum ConelabStatus conelab_is_whi_htilde(const struct ConelabLibrary *lib,
                                         const char *name,
                                         bool *out);

// Whether a 2-functor document is a biequivalence.
//
// # Safety
// As for [`conelab_double_category_counts`].
enum ConelabStatus conelab_is_biequivalence(const struct ConelabLibrary *lib,
                                            const char *name,
                                            bool *out);

// Whether a double functor document is a double biequivalence.
//
// # Safety
// As for [`conelab_double_category_counts`].
enum ConelabStatus conelab_is_double_biequivalence(const struct ConelabLibrary *lib,
                                                   const char *name,
                                                   bool *out);

// Whether a double functor document is a trivial fibration.
//
// # Safety
// As for [`conelab_double_category_counts`].
enum ConelabStatus conelab_is_trivial_fibration(const struct ConelabLibrary *lib,
                                                const char *name,
                                                bool *out);

// Decides whether a pseudo-cone document is a homotopy 2-limit of its
// diagram, by the definition and through both cone double categories.
//
// # Safety
// As for [`conelab_double_category_counts`].
enum ConelabStatus conelab_check_limit(const struct ConelabLibrary *lib,
                                       const char *cone,
                                       uint64_t budget_limit,
                                       struct ConelabLimitVerdicts *out);

// The Segal condition on the nerve of a double category truncated at
// `(m, t)`, in each direction.
//
// # Safety
// As for [`conelab_double_category_counts`]; `horizontal` and `vertical`
// must be writable.
enum ConelabStatus conelab_segal(const struct ConelabLibrary *lib,
                                 const char *name,
                                 size_t m,
                                 size_t t,
                                 uint64_t budget_limit,
                                 bool *horizontal,
                                 bool *vertical);

// Runs the command line with the given arguments (not including the
// program name) and returns its exit code: 0 pass, 1 fail, 2 error. The
// report is written to `*out` as a string to release with
// [`conelab_string_free`]. Pass `--json` for a machine-readable report.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; `out` must be writable.
int32_t conelab_cli_run(size_t argc, const char *const *argv, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void conelab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONELAB_H */
