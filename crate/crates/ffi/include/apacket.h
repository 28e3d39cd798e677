#ifndef APACKET_H
#define APACKET_H

#include <stddef.h>
#include <stdint.h>

#define AP_OK 0

#define AP_ERR_NULL 1

#define AP_ERR_PARSE 2

#define AP_ERR_INVALID 3

#define AP_ERR_RECURSION 4

#define AP_ERR_INTERNAL 5

#define AP_ERR_PANIC 6

/**
 * A parameter together with its admissible order.
 */
typedef struct ApParam ApParam;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a JSON parameter file. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
int32_t ap_param_from_json(const char *json, struct ApParam **out);

/**
 * Load a built-in example such as `"moeglin-s8"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
int32_t ap_param_builtin(const char *name, struct ApParam **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `param` must come from this library and not be used afterwards.
 */
void ap_param_free(struct ApParam *param);

/**
 * Number of block occurrences; the length expected by `ap_decide`.
 *
 * # Safety
 * `param` must be a live handle and `out` a valid pointer.
 */
int32_t ap_param_block_count(const struct ApParam *param, size_t *out);

/**
 * Decide one `(l, eta)`, both indexed by occurrence; `eta` entries are
 * `1` or `-1`. Writes 1 (nonvanishing) or 0 to `*out`.
 *
 * # Safety
 * `l` and `eta` must point to `n` readable elements; `out` must be valid.
 */
int32_t ap_decide(const struct ApParam *param,
                  const uint32_t *l,
                  const int8_t *eta,
                  size_t n,
                  int32_t *out);

/**
 * Packet size under the handle's order.
 *
 * # Safety
 * `param` must be a live handle and `out` a valid pointer.
 */
int32_t ap_packet_size(const struct ApParam *param, uint64_t *out);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library from this thread.
 */
const char *ap_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* APACKET_H */
