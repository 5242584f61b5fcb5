#ifndef ASCENTLAB_H
#define ASCENTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum {
  AL_STATUS_OK = 0,
  AL_STATUS_NULL_POINTER = 1,
  AL_STATUS_INVALID_ARGUMENT = 2,
  AL_STATUS_CAP_EXCEEDED = 3,
  AL_STATUS_ENUMERATION = 4,
  AL_STATUS_PARSE = 5,
  AL_STATUS_EXTEND = 6,
  AL_STATUS_MISMATCH = 7,
  AL_STATUS_PANIC = 8,
} AlStatus;

// An exact coefficient series.
typedef struct AlSeries AlSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null after a
// success. Valid until the next call on the same thread.
const char *al_last_error(void);

// Library version, a static string.
const char *al_version(void);

// Enumerate `n_terms` counts (lengths 1..=n_terms). `algorithm` is one of
// `ascent`, `000-exponential`, `000-polynomial`, `100`, `110`, `120`.
//
// # Safety
// `algorithm` must be a nul-terminated string and `out` a valid pointer.
AlStatus al_enumerate(const char *algorithm, size_t n_terms, bool override_caps, AlSeries **out);

// Parse b-file text holding exact terms only.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
AlStatus al_series_from_bfile(const char *text, AlSeries **out);

// # Safety
// `series` must come from this library and not be used afterwards.
void al_series_free(AlSeries *series);

// # Safety
// `s` must come from this library.
void al_string_free(char *s);

// Number of terms and the index of the first one.
//
// # Safety
// Pointers must be valid.
AlStatus al_series_shape(const AlSeries *series, size_t *len, size_t *first_index);

// Decimal string of the term at index `n`.
//
// # Safety
// Pointers must be valid; free the string with [`al_string_free`].
AlStatus al_series_term(const AlSeries *series, size_t n, char **out);

// The series as b-file text.
//
// # Safety
// Pointers must be valid; free the string with [`al_string_free`].
AlStatus al_series_to_bfile(const AlSeries *series, char **out);

// Check a series starting at index 1 against the enumerator for
// `algorithm`. Returns `Mismatch` with the first bad index in the error
// message when they disagree.
//
// # Safety
// Pointers must be valid.
AlStatus al_verify(const AlSeries *series, const char *algorithm, bool override_caps);

// Predict `count` further terms with an ensemble of differential
// approximants of the given order, at `digits` decimal digits. The output
// is b-file text: the exact input followed by `index ~value agreed_digits`
// lines. A series starting at index 1 gets `c_0 = 1` for the fit.
//
// # Safety
// Pointers must be valid; free the string with [`al_string_free`].
AlStatus al_extend(const AlSeries *series, size_t count, size_t order, uint32_t digits, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASCENTLAB_H */
