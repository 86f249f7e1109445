#include <stdio.h>
#include <string.h>

#include "sternfs.h"

#define CHECK(expr)                                                   \
  do {                                                                \
    SternfsStatus s_ = (expr);                                        \
    if (s_ != STERNFS_STATUS_OK) {                                    \
      fprintf(stderr, "%s: %s\n", #expr, sternfs_status_message(s_)); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  SternfsParams params = {32, 16, 4, 8, 16};
  uint8_t seed[16] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  SternfsPublicKey *pk = NULL;
  SternfsSecretKey *sk = NULL;
  SternfsSignature *sig = NULL;
  const char *msg = "hello from C";

  CHECK(sternfs_keygen(&params, seed, sizeof seed, &pk, &sk));
  CHECK(sternfs_sign(pk, sk, (const uint8_t *)msg, strlen(msg), NULL, 0, &sig));
  CHECK(sternfs_verify(pk, (const uint8_t *)msg, strlen(msg), sig));
  if (sternfs_verify(pk, (const uint8_t *)"other", 5, sig) != STERNFS_STATUS_INVALID) {
    return 1;
  }

  size_t len = 0;
  if (sternfs_signature_to_bytes(sig, NULL, &len) != STERNFS_STATUS_BUFFER_TOO_SMALL) {
    return 1;
  }
  uint8_t buf[4096];
  if (len > sizeof buf) {
    return 1;
  }
  CHECK(sternfs_signature_to_bytes(sig, buf, &len));
  SternfsSignature *back = NULL;
  CHECK(sternfs_signature_from_bytes(buf, len, &back));
  CHECK(sternfs_verify(pk, (const uint8_t *)msg, strlen(msg), back));

  printf("ok %s %zu\n", sternfs_version(), len);
  sternfs_signature_free(back);
  sternfs_signature_free(sig);
  sternfs_secret_key_free(sk);
  sternfs_public_key_free(pk);
  return 0;
}
