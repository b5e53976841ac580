#ifndef VOTELAB_H
#define VOTELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VlLevel {
  VL_LEVEL_TOY = 0,
  VL_LEVEL_TEST = 1,
  VL_LEVEL_PRODUCTION = 2,
} VlLevel;

// Verification mode for [`vl_transcript_verify`].
typedef enum VlMode {
  // Whatever the transcript header records.
  VL_MODE_RECORDED = 0,
  VL_MODE_WEAK = 1,
  VL_MODE_STRONG = 2,
} VlMode;

typedef enum VlStatus {
  VL_STATUS_OK = 0,
  VL_STATUS_NULL_POINTER = 1,
  VL_STATUS_INVALID_ARGUMENT = 2,
  VL_STATUS_PARSE = 3,
  // Decryption failed or a value is outside the message space.
  VL_STATUS_CRYPTO = 4,
  // A transcript was parsed and audited, and the audit failed.
  VL_STATUS_REJECTED = 5,
  VL_STATUS_INTERNAL = 6,
} VlStatus;

typedef struct VlCiphertext VlCiphertext;

typedef struct VlKeyPair VlKeyPair;

typedef struct VlPublicKey VlPublicKey;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *vl_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void vl_string_free(char *s);

// Generates a key pair. `seed` may be NULL for fresh entropy; otherwise
// its `seed_len` (1..=32) bytes make the result reproducible.
//
// # Safety
// `seed` must point to `seed_len` readable bytes; `out` must be writable.
enum VlStatus vl_keypair_generate(enum VlLevel level,
                                  const uint8_t *seed,
                                  size_t seed_len,
                                  struct VlKeyPair **out);

// A key pair with a given secret exponent.
//
// # Safety
// `out` must be writable.
enum VlStatus vl_keypair_from_secret(enum VlLevel level, uint64_t secret, struct VlKeyPair **out);

// # Safety
// `kp` must be a live key pair handle; `out` must be writable.
enum VlStatus vl_keypair_public(const struct VlKeyPair *kp, struct VlPublicKey **out);

// # Safety
// `kp` must be NULL or a handle from this library, not used afterwards.
void vl_keypair_free(struct VlKeyPair *kp);

// The public key as JSON `{params, y}`.
//
// # Safety
// `pk` must be a live handle; `out` must be writable.
enum VlStatus vl_public_key_to_json(const struct VlPublicKey *pk, char **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum VlStatus vl_public_key_from_json(const char *json, struct VlPublicKey **out);

// # Safety
// `pk` must be NULL or a handle from this library, not used afterwards.
void vl_public_key_free(struct VlPublicKey *pk);

// Encrypts g^m with randomness drawn from `seed` (NULL for entropy).
//
// # Safety
// As for [`vl_keypair_generate`]; `pk` must be a live handle.
enum VlStatus vl_encrypt(const struct VlPublicKey *pk,
                         uint64_t m,
                         const uint8_t *seed,
                         size_t seed_len,
                         struct VlCiphertext **out);

// Encrypts g^m with explicit randomness `r` (reduced mod q).
//
// # Safety
// `pk` must be a live handle; `out` must be writable.
enum VlStatus vl_encrypt_with_randomness(const struct VlPublicKey *pk,
                                         uint64_t m,
                                         uint64_t r,
                                         struct VlCiphertext **out);

// Decrypts to m in 0..=bound.
//
// # Safety
// Handles must be live; `m` must be writable.
enum VlStatus vl_decrypt(const struct VlKeyPair *kp,
                         const struct VlCiphertext *ct,
                         uint64_t bound,
                         uint64_t *m);

// Homomorphic combination: the result decrypts to the sum.
//
// # Safety
// Handles must be live; `out` must be writable.
enum VlStatus vl_ciphertext_combine(const struct VlPublicKey *pk,
                                    const struct VlCiphertext *a,
                                    const struct VlCiphertext *b,
                                    struct VlCiphertext **out);

// The ciphertext as JSON `{c1, c2}` with hex components.
//
// # Safety
// `ct` must be a live handle; `out` must be writable.
enum VlStatus vl_ciphertext_to_json(const struct VlCiphertext *ct, char **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum VlStatus vl_ciphertext_from_json(const char *json, struct VlCiphertext **out);

// # Safety
// `ct` must be NULL or a handle from this library, not used afterwards.
void vl_ciphertext_free(struct VlCiphertext *ct);

// Audits an election transcript given as JSON text. Returns `Ok` if every
// check passes and `Rejected` if one fails; either way `report` (if not
// NULL) receives the audit as JSON.
//
// # Safety
// `json` must be a NUL-terminated string; `report` must be NULL or
// writable.
enum VlStatus vl_transcript_verify(const char *json, enum VlMode mode, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VOTELAB_H */
