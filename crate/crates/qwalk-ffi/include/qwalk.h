#ifndef QWALK_H
#define QWALK_H

/* This file is generated by cbindgen from the qwalk-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Walk families exposed through the ABI.
typedef enum QwModel {
  // Inhomogeneous walk with origin coin (1/√2)[[1, e^iω], [e^-iω, -1]].
  QW_MODEL_EQ22 = 0,
  // Companion walk with origin coin (1/√2)[[e^iω, 1], [1, -e^-iω]].
  QW_MODEL_EQ21 = 1,
  // Homogeneous Hadamard walk (ω is ignored).
  QW_MODEL_HADAMARD = 2,
} QwModel;

// Status code of every fallible call.
typedef enum QwStatus {
  QW_STATUS_OK = 0,
  // A parameter is out of range or not finite.
  QW_STATUS_INVALID_ARGUMENT = 1,
  // A required pointer argument is null.
  QW_STATUS_NULL_POINTER = 2,
  // The caller's buffer cannot hold the requested data.
  QW_STATUS_BUFFER_TOO_SMALL = 3,
} QwStatus;

// Opaque walk handle: a coin field plus the current state vector.
typedef struct QwWalk QwWalk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a walk in its initial state and stores the handle in `out_walk`.
//
// # Safety
// `out_walk` must be a valid pointer to writable memory for one pointer.
enum QwStatus qw_walk_new(enum QwModel model, double omega, struct QwWalk **out_walk);

// Releases a handle from [`qw_walk_new`]. Null is a no-op.
//
// # Safety
// `walk` must be null or a handle from [`qw_walk_new`] not yet freed.
void qw_walk_free(struct QwWalk *walk);

// Advances the walk by `steps` time steps.
//
// # Safety
// `walk` must be a live handle from [`qw_walk_new`].
enum QwStatus qw_walk_step(struct QwWalk *walk, uint64_t steps);

// Current time of the walk; 0 for a null handle.
//
// # Safety
// `walk` must be null or a live handle.
uint64_t qw_walk_time(const struct QwWalk *walk);

// Probability of finding the walker at the origin at the current time.
//
// # Safety
// `walk` must be a live handle; `out` must point to a writable double.
enum QwStatus qw_walk_return_probability(const struct QwWalk *walk, double *out);

// Origin amplitude components (left/right chirality, real/imaginary).
//
// # Safety
// `walk` must be a live handle; the four out-pointers must be writable.
enum QwStatus qw_walk_origin_amplitude(const struct QwWalk *walk,
                                       double *l_re,
                                       double *l_im,
                                       double *r_re,
                                       double *r_im);

// Copies the position distribution into `buffer`: `2·time + 1` entries for
// positions -time..=time.
//
// # Safety
// `walk` must be a live handle; `buffer` must hold at least `len` doubles.
enum QwStatus qw_walk_distribution(const struct QwWalk *walk, double *buffer, size_t len);

// The localization limit c(ω) of the inhomogeneous walk.
double qw_localization_constant(double omega);

// Mean of c(ω) over uniformly distributed ω, (25 - 7√5)/25.
double qw_localization_mean_uniform(void);

// Fills `buffer[t]` with the return probability at time t for
// t = 0..=max_time in one sweep.
//
// # Safety
// `buffer` must hold at least `len` doubles with `len > max_time`.
enum QwStatus qw_return_probabilities(enum QwModel model,
                                      double omega,
                                      uint64_t max_time,
                                      double *buffer,
                                      size_t len);

// Classical comparator: `buffer[t]` gets the classical return probability
// at time t, with left probability `p0` at the origin and `p` elsewhere.
//
// # Safety
// `buffer` must hold at least `len` doubles with `len > max_time`.
enum QwStatus qw_classical_return_probabilities(double p0,
                                                double p,
                                                uint64_t max_time,
                                                double *buffer,
                                                size_t len);

// First-return coefficients r*_1..r*_len as doubles (exact dyadic values).
//
// # Safety
// `buffer` must hold at least `len` doubles.
enum QwStatus qw_r_star_coefficients(double *buffer, size_t len);

// Runs the registered invariant suite. `tolerance` overrides the
// floating-point checks when positive; pass 0 for the defaults. Writes the
// number of failed checks to `out_failures` and returns `Ok` even when
// checks fail (the failure count carries the verdict).
//
// # Safety
// `out_failures` must point to a writable u32.
enum QwStatus qw_verify(double tolerance, uint32_t *out_failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QWALK_H */
