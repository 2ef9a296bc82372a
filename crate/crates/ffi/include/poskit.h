#ifndef POSKIT_H
#define POSKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The first four match the CLI exit codes.
typedef enum PoskitStatus {
  POSKIT_STATUS_OK = 0,
  POSKIT_STATUS_INPUT_ERROR = 2,
  POSKIT_STATUS_REFUSED = 3,
  POSKIT_STATUS_INTERNAL_ERROR = 4,
  POSKIT_STATUS_NULL_POINTER = 5,
  POSKIT_STATUS_INVALID_UTF8 = 6,
  // The exact result does not fit in a 64-bit numerator/denominator.
  POSKIT_STATUS_OVERFLOW = 7,
} PoskitStatus;

// Which bundle query to run.
typedef enum PoskitBundleQuery {
  POSKIT_BUNDLE_QUERY_NEF = 0,
  POSKIT_BUNDLE_QUERY_AMPLE = 1,
} PoskitBundleQuery;

// Opaque handle to a validated smooth complete fan.
typedef struct PoskitFan PoskitFan;

// Opaque handle to a validated variety model.
typedef struct PoskitModel PoskitModel;

// Exact rational `num / den` with `den > 0`, in lowest terms.
typedef struct PoskitRational {
  int64_t num;
  int64_t den;
} PoskitRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *poskit_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void poskit_string_free(char *s);

// Parses and validates a variety model from JSON.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_model_from_json(const char *json, struct PoskitModel **out);

// Model of `G/B` for a Cartan type such as `"A3"`.
//
// # Safety
// `cartan_type` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_model_flag(const char *cartan_type, struct PoskitModel **out);

// Model of `P^n`.
//
// # Safety
// `out` must be writable.
enum PoskitStatus poskit_model_projective(uintptr_t n, struct PoskitModel **out);

// # Safety
// `model` must be NULL or a handle from this library, not yet freed.
void poskit_model_free(struct PoskitModel *model);

// Picard rank of the model, or 0 for a NULL handle.
//
// # Safety
// `model` must be NULL or a live handle.
uintptr_t poskit_model_rank(const struct PoskitModel *model);

// # Safety
// `model` must be a live handle; `out` must be writable. The string must be
// released with `poskit_string_free`.
enum PoskitStatus poskit_model_to_json(const struct PoskitModel *model, char **out);

// Whether `L = sum coeffs[i] D_i` is nef.
//
// # Safety
// `coeffs` must point to `len` integers; `out` must be writable.
enum PoskitStatus poskit_model_nef(const struct PoskitModel *model,
                                   const int64_t *coeffs,
                                   uintptr_t len,
                                   bool *out);

// # Safety
// As for `poskit_model_nef`.
enum PoskitStatus poskit_model_ample(const struct PoskitModel *model,
                                     const int64_t *coeffs,
                                     uintptr_t len,
                                     bool *out);

// Seshadri constant of an ample line bundle at the sink.
//
// # Safety
// As for `poskit_model_nef`.
enum PoskitStatus poskit_model_seshadri(const struct PoskitModel *model,
                                        const int64_t *coeffs,
                                        uintptr_t len,
                                        struct PoskitRational *out);

// Seshadri constant computed on the blow-up at the sink.
//
// # Safety
// As for `poskit_model_nef`.
enum PoskitStatus poskit_blowup_seshadri(const struct PoskitModel *model,
                                         const int64_t *coeffs,
                                         uintptr_t len,
                                         struct PoskitRational *out);

// Whether `Bl*(sum b_i D_i) - c E` is nef on the blow-up at the sink.
//
// # Safety
// `b` must point to `len` rationals; `out` must be writable.
enum PoskitStatus poskit_blowup_is_nef(const struct PoskitModel *model,
                                       const struct PoskitRational *b,
                                       uintptr_t len,
                                       struct PoskitRational c,
                                       bool *out);

// Nef cone (`mori == false`) or Mori cone (`mori == true`) of the blow-up,
// as cone JSON.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum PoskitStatus poskit_blowup_cone_json(const struct PoskitModel *model, bool mori, char **out);

// Parses and validates a fan from JSON.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_fan_from_json(const char *json, struct PoskitFan **out);

// # Safety
// `fan` must be NULL or a handle from this library, not yet freed.
void poskit_fan_free(struct PoskitFan *fan);

// Number of walls (torus-invariant curves), or 0 for a NULL handle.
//
// # Safety
// `fan` must be NULL or a live handle.
uintptr_t poskit_fan_wall_count(const struct PoskitFan *fan);

// # Safety
// `coeffs` must point to `len` integers (one per ray); `out` must be writable.
enum PoskitStatus poskit_toric_nef(const struct PoskitFan *fan,
                                   const int64_t *coeffs,
                                   uintptr_t len,
                                   bool *out);

// Seshadri constant of a nef divisor at the fixed point of maximal cone `cone`.
//
// # Safety
// As for `poskit_toric_nef`.
enum PoskitStatus poskit_toric_seshadri(const struct PoskitFan *fan,
                                        const int64_t *coeffs,
                                        uintptr_t len,
                                        uintptr_t cone,
                                        struct PoskitRational *out);

// Nef or ample test for a bundle on a simple G-variety given by splitting
// data JSON.
//
// # Safety
// `splitting_json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_bundle_check(const struct PoskitModel *model,
                                      const char *splitting_json,
                                      enum PoskitBundleQuery query,
                                      bool *out);

// Seshadri constant at the sink of a nef bundle on a simple G-variety.
//
// # Safety
// `splitting_json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_bundle_seshadri(const struct PoskitModel *model,
                                         const char *splitting_json,
                                         struct PoskitRational *out);

// Nefness of a torus-equivariant bundle given by splitting data on walls.
//
// # Safety
// `splitting_json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_toric_bundle_nef(const struct PoskitFan *fan,
                                          const char *splitting_json,
                                          bool *out);

// Seshadri constant of a nef torus-equivariant bundle at the fixed point of
// maximal cone `cone`.
//
// # Safety
// `splitting_json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_toric_bundle_seshadri(const struct PoskitFan *fan,
                                               const char *splitting_json,
                                               uintptr_t cone,
                                               struct PoskitRational *out);

// Dual of a cone given as JSON, returned as JSON.
//
// # Safety
// `cone_json` must be a NUL-terminated string; `out` must be writable.
enum PoskitStatus poskit_cone_dual_json(const char *cone_json, char **out);

// Whether the vector `v` lies in the cone given as JSON.
//
// # Safety
// `cone_json` must be a NUL-terminated string; `v` must point to `len`
// rationals; `out` must be writable.
enum PoskitStatus poskit_cone_contains(const char *cone_json,
                                       const struct PoskitRational *v,
                                       uintptr_t len,
                                       bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSKIT_H */
