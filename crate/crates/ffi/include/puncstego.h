#ifndef PUNCSTEGO_H
#define PUNCSTEGO_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PsgStatus {
  PSG_STATUS_OK = 0,
  PSG_STATUS_NULL_POINTER = 1,
  PSG_STATUS_INVALID_ARGUMENT = 2,
  PSG_STATUS_LENGTH_MISMATCH = 3,
  PSG_STATUS_RESOURCE_LIMIT = 4,
  /**
   * The decoder could not reach the message coset; the output is untouched.
   */
  PSG_STATUS_EMBED_FAILURE = 5,
  PSG_STATUS_INTERNAL = 6,
} PsgStatus;

/**
 * Opaque stegoscheme handle.
 */
typedef struct PsgScheme PsgScheme;

/**
 * Scheme parameters. Unavailable values are `-1` (integers) or NaN.
 */
typedef struct PsgParams {
  uint32_t n;
  uint32_t r;
  /**
   * Worst-case changes.
   */
  int32_t t_max;
  /**
   * Average changes over all cosets.
   */
  double t_avg;
  double a;
  double e;
  double e_avg;
  double p_s;
  double e_rel;
  double e_avg_rel;
} PsgParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Punctured `BCH_m(t)` scheme: the code is punctured by the greedy search
 * until its covering radius is `t`, so embedding never fails.
 *
 * # Safety
 * `out` must be null or valid for writing a pointer.
 */
enum PsgStatus psg_scheme_new_punctured_bch(uint32_t m, uint32_t t, struct PsgScheme **out);

/**
 * `BCH_m(t)` with the bounded Berlekamp–Massey decoder; embedding can fail.
 *
 * # Safety
 * `out` must be null or valid for writing a pointer.
 */
enum PsgStatus psg_scheme_new_bch(uint32_t m, uint32_t t, struct PsgScheme **out);

/**
 * Hamming code with `m` parity bits and coset-leader embedding.
 *
 * # Safety
 * `out` must be null or valid for writing a pointer.
 */
enum PsgStatus psg_scheme_new_hamming(uint32_t m, struct PsgScheme **out);

/**
 * # Safety
 * `scheme` must be null or a handle returned by this library, not yet freed.
 */
void psg_scheme_free(struct PsgScheme *scheme);

/**
 * Cover length, or 0 for a null handle.
 *
 * # Safety
 * `scheme` must be null or a live handle.
 */
size_t psg_scheme_n(const struct PsgScheme *scheme);

/**
 * Message length, or 0 for a null handle.
 *
 * # Safety
 * `scheme` must be null or a live handle.
 */
size_t psg_scheme_r(const struct PsgScheme *scheme);

/**
 * Embeds `msg` (`r` bits) in `cover` (`n` bits), writing `n` bits to `stego`.
 *
 * # Safety
 * Pointers must be valid for the given lengths; `stego` for `stego_len` bytes.
 */
enum PsgStatus psg_scheme_embed(const struct PsgScheme *scheme,
                                const uint8_t *cover,
                                size_t cover_len,
                                const uint8_t *msg,
                                size_t msg_len,
                                uint8_t *stego,
                                size_t stego_len);

/**
 * Writes the `r`-bit message carried by `stego` (`n` bits) to `msg`.
 *
 * # Safety
 * Pointers must be valid for the given lengths.
 */
enum PsgStatus psg_scheme_extract(const struct PsgScheme *scheme,
                                  const uint8_t *stego,
                                  size_t stego_len,
                                  uint8_t *msg,
                                  size_t msg_len);

/**
 * Fills `out` with the scheme's parameters.
 *
 * # Safety
 * `scheme` must be a live handle and `out` valid for writing.
 */
enum PsgStatus psg_scheme_params(const struct PsgScheme *scheme, struct PsgParams *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *psg_status_str(enum PsgStatus status);

/**
 * Megabits of a syndrome-leader table with `2^r` entries of `n + r` bits.
 */
double psg_table_size_mb(uint64_t n, uint32_t r);

/**
 * `a / H_q^{-1}(a)`.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum PsgStatus psg_entropy_bound(uint32_t q, double a, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PUNCSTEGO_H */
