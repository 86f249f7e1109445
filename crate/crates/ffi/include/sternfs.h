/* Generated by cbindgen. Do not edit. */

#ifndef STERNFS_H
#define STERNFS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SternfsStatus {
  STERNFS_STATUS_OK = 0,
  /**
   * The signature did not verify.
   */
  STERNFS_STATUS_INVALID = 1,
  STERNFS_STATUS_NULL_POINTER = 2,
  STERNFS_STATUS_INVALID_PARAMETER = 3,
  STERNFS_STATUS_MALFORMED = 4,
  STERNFS_STATUS_BUFFER_TOO_SMALL = 5,
  STERNFS_STATUS_KEY_MISMATCH = 6,
  STERNFS_STATUS_INTERNAL = 7,
} SternfsStatus;

typedef struct SternfsPublicKey SternfsPublicKey;

typedef struct SternfsSecretKey SternfsSecretKey;

typedef struct SternfsSignature SternfsSignature;

/**
 * Scheme parameters. `commit_len` is in bytes.
 */
typedef struct SternfsParams {
  uint32_t n;
  uint32_t k;
  uint32_t w;
  uint32_t r;
  uint32_t commit_len;
} SternfsParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *sternfs_status_message(enum SternfsStatus status);

/**
 * Library version, NUL-terminated.
 */
const char *sternfs_version(void);

/**
 * Parameters for a security level in bits.
 */
enum SternfsStatus sternfs_params_for_lambda(uint32_t lambda, struct SternfsParams *out);

/**
 * Generates a key pair. `seed` may be NULL (with `seed_len = 0`) for OS
 * entropy; otherwise it must hold at least 16 bytes.
 */
enum SternfsStatus sternfs_keygen(const struct SternfsParams *params,
                                  const uint8_t *seed,
                                  size_t seed_len,
                                  struct SternfsPublicKey **pk_out,
                                  struct SternfsSecretKey **sk_out);

/**
 * Signs `msg`. `seed` follows the rules of `sternfs_keygen`.
 */
enum SternfsStatus sternfs_sign(const struct SternfsPublicKey *pk,
                                const struct SternfsSecretKey *sk,
                                const uint8_t *msg,
                                size_t msg_len,
                                const uint8_t *seed,
                                size_t seed_len,
                                struct SternfsSignature **sig_out);

/**
 * `STERNFS_STATUS_OK` when valid, `STERNFS_STATUS_INVALID` otherwise.
 */
enum SternfsStatus sternfs_verify(const struct SternfsPublicKey *pk,
                                  const uint8_t *msg,
                                  size_t msg_len,
                                  const struct SternfsSignature *sig);

enum SternfsStatus sternfs_public_key_params(const struct SternfsPublicKey *pk,
                                             struct SternfsParams *out);

enum SternfsStatus sternfs_public_key_to_bytes(const struct SternfsPublicKey *pk,
                                               uint8_t *out,
                                               size_t *out_len);

enum SternfsStatus sternfs_secret_key_to_bytes(const struct SternfsSecretKey *sk,
                                               uint8_t *out,
                                               size_t *out_len);

enum SternfsStatus sternfs_signature_to_bytes(const struct SternfsSignature *sig,
                                              uint8_t *out,
                                              size_t *out_len);

enum SternfsStatus sternfs_public_key_from_bytes(const uint8_t *data,
                                                 size_t len,
                                                 struct SternfsPublicKey **out);

enum SternfsStatus sternfs_secret_key_from_bytes(const uint8_t *data,
                                                 size_t len,
                                                 struct SternfsSecretKey **out);

enum SternfsStatus sternfs_signature_from_bytes(const uint8_t *data,
                                                size_t len,
                                                struct SternfsSignature **out);

/**
 * Accepts NULL.
 */
void sternfs_public_key_free(struct SternfsPublicKey *pk);

/**
 * Accepts NULL.
 */
void sternfs_secret_key_free(struct SternfsSecretKey *sk);

/**
 * Accepts NULL.
 */
void sternfs_signature_free(struct SternfsSignature *sig);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STERNFS_H */
