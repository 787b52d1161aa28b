/* C interface to the broadrep regenerating-code toolkit. */

#ifndef BROADREP_H
#define BROADREP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define BR_OK 0

// A required pointer argument was NULL.
#define BR_ERR_NULL_ARGUMENT 1

// A string argument was not valid UTF-8.
#define BR_ERR_UTF8 2

// The arguments describe no admissible system (domain validation failed).
#define BR_ERR_INVALID 3

// System parameters for one storage instance. Opaque; create with
// [`br_params_new`], destroy with [`br_params_free`].
typedef struct BrParams BrParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL if every call
// so far succeeded. The pointer stays valid until the next failing call on
// the same thread; do not free it.
const char *br_last_error(void);

// Free a string returned through any `char **` out-parameter. NULL is a
// harmless no-op.
//
// # Safety
// `s` must be NULL or a pointer previously returned by this library and not
// yet freed.
void br_string_free(char *s);

// Create a parameter handle for an (n, k, d, r) system storing a file of
// size `file_size` with surviving node fraction `rho`. `rho` defaults to 0
// and `file_size` to 1 when NULL. On success writes the handle to `out` and
// returns BR_OK.
//
// # Safety
// `out` must point to writable memory for one pointer; `rho` and
// `file_size` must each be NULL or a NUL-terminated string.
int32_t br_params_new(uint32_t n,
                      uint32_t k,
                      uint32_t d,
                      uint32_t r,
                      const char *rho,
                      const char *file_size,
                      struct BrParams **out);

// Destroy a handle from [`br_params_new`]. NULL is a harmless no-op.
//
// # Safety
// `p` must be NULL or an unfreed handle from [`br_params_new`].
void br_params_free(struct BrParams *p);

// Smallest per-node storage supporting repair bandwidth `gamma`, as an
// exact rational string.
//
// # Safety
// `p` must be a live handle, `gamma` a NUL-terminated string, and
// `out_alpha` writable for one pointer.
int32_t br_alpha_star(const struct BrParams *p, const char *gamma, char **out_alpha);

// Smallest feasible repair bandwidth for the instance (the threshold below
// which no storage amount suffices), as an exact rational string.
//
// # Safety
// `p` must be a live handle and `out_gamma` writable for one pointer.
int32_t br_min_feasible_gamma(const struct BrParams *p, char **out_gamma);

// The minimum-storage corner of the trade-off curve as two exact rational
// strings. Either out-pointer may be NULL to skip that coordinate.
//
// # Safety
// `p` must be a live handle; non-NULL out-pointers must be writable.
int32_t br_msr_point(const struct BrParams *p, char **out_gamma, char **out_alpha);

// The minimum-bandwidth corner of the trade-off curve as two exact rational
// strings. Either out-pointer may be NULL to skip that coordinate.
//
// # Safety
// `p` must be a live handle; non-NULL out-pointers must be writable.
int32_t br_mbr_point(const struct BrParams *p, char **out_gamma, char **out_alpha);

// Number of packets a file must be split into so that trade-off index
// `j_bar` with expansion factor `xi` meets the reconstruction bound.
// `rho` defaults to 0 when NULL.
//
// # Safety
// `rho` must be NULL or a NUL-terminated string; `out` must be writable
// for one u64.
int32_t br_pstar(uint32_t k,
                 uint32_t d,
                 uint32_t r,
                 uint32_t j_bar,
                 const char *rho,
                 uint32_t xi,
                 uint64_t *out);

// Probability that the stacked transmission-coefficient matrix of two
// helper rounds keeps full column rank, as an exact rational string.
//
// # Safety
// `out` must be writable for one pointer.
int32_t br_t_fullrank(uint32_t d, uint32_t r, uint32_t j_bar, uint32_t e, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BROADREP_H */
