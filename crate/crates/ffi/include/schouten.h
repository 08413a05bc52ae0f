#ifndef SCHOUTEN_H
#define SCHOUTEN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SchoutenStatus {
  SchoutenStatus_Ok = 0,
  SchoutenStatus_NullPointer = 1,
  SchoutenStatus_InvalidArgument = 2,
  SchoutenStatus_Parse = 3,
  SchoutenStatus_NotACycle = 4,
  SchoutenStatus_VerificationFailed = 5,
  SchoutenStatus_TheoremViolation = 6,
  SchoutenStatus_Panic = 7,
} SchoutenStatus;

/**
 * Opaque exactness certificate handle.
 */
typedef struct SchoutenCertificate SchoutenCertificate;

/**
 * Opaque chain handle.
 */
typedef struct SchoutenChain SchoutenChain;

/**
 * Homology of one block, as returned by [`schouten_betti`].
 */
typedef struct SchoutenBettiReport {
  uint64_t n;
  uint64_t m;
  int64_t w;
  int64_t h;
  uint64_t dim;
  uint64_t rank_out;
  uint64_t rank_in;
  uint64_t betti;
} SchoutenBettiReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *schouten_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, not yet freed.
 */
void schouten_string_free(char *s);

/**
 * `dim C_m^(w,h)` on n-space.
 *
 * # Safety
 * `out_dim` must be valid for writes.
 */
enum SchoutenStatus schouten_chain_dim(uint64_t n,
                                       uint64_t m,
                                       int64_t w,
                                       int64_t h,
                                       uint64_t *out_dim);

/**
 * Betti number of `C_m^(w,h)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SchoutenStatus schouten_betti(uint64_t n,
                                   uint64_t m,
                                   int64_t w,
                                   int64_t h,
                                   struct SchoutenBettiReport *out);

/**
 * Euler characteristic of the `(w,h)` block, scalars included.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SchoutenStatus schouten_euler(uint64_t n, int64_t w, int64_t h, int64_t *out);

/**
 * Parses a chain in text (`coeff | factor ; factor` lines) or JSON form.
 * `n = 0` means the text must state its own dimension.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_chain_parse(const char *text, uint64_t n, struct SchoutenChain **out);

/**
 * Boundary of a chain, as a new handle.
 *
 * # Safety
 * `chain` must be a live handle; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_chain_boundary(const struct SchoutenChain *chain,
                                            struct SchoutenChain **out);

/**
 * # Safety
 * `chain` must be a live handle; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_chain_is_zero(const struct SchoutenChain *chain, bool *out);

/**
 * Text form of a chain; free the result with [`schouten_string_free`].
 *
 * # Safety
 * `chain` must be a live handle; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_chain_to_string(const struct SchoutenChain *chain, char **out);

/**
 * # Safety
 * `chain` must be null or a live handle, not used afterwards.
 */
void schouten_chain_free(struct SchoutenChain *chain);

/**
 * Certifies that a 2-cycle of weight `(w,w)` is a boundary.
 *
 * # Safety
 * `chain` must be a live handle; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_certify(const struct SchoutenChain *chain,
                                     struct SchoutenCertificate **out);

/**
 * Re-verifies a certificate; `Ok` when valid.
 *
 * # Safety
 * `cert` must be a live handle.
 */
enum SchoutenStatus schouten_certificate_check(const struct SchoutenCertificate *cert);

/**
 * JSON form of a certificate; free the result with [`schouten_string_free`].
 *
 * # Safety
 * `cert` must be a live handle; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_certificate_to_json(const struct SchoutenCertificate *cert,
                                                 char **out);

/**
 * Parses a certificate without verifying it.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_certificate_from_json(const char *json,
                                                   struct SchoutenCertificate **out);

/**
 * # Safety
 * `cert` must be null or a live handle, not used afterwards.
 */
void schouten_certificate_free(struct SchoutenCertificate *cert);

/**
 * Whether a bivector given as text (`c * x[..] d[..] + ...`) is Poisson.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be valid for writes.
 */
enum SchoutenStatus schouten_is_poisson(const char *text, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHOUTEN_H */
