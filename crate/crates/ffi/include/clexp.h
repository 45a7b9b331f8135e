#ifndef CLEXP_H
#define CLEXP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ClexpStatus {
  CLEXP_STATUS_OK = 0,
  CLEXP_STATUS_NULL_POINTER = 1,
  CLEXP_STATUS_INVALID_UTF8 = 2,
  CLEXP_STATUS_INVALID_SPEC = 3,
  CLEXP_STATUS_CAP_EXCEEDED = 4,
  CLEXP_STATUS_UNKNOWN_CLASS = 5,
  CLEXP_STATUS_INVALID_ARGUMENT = 6,
  CLEXP_STATUS_OVERFLOW = 7,
  CLEXP_STATUS_INTERNAL = 8,
} ClexpStatus;

/**
 * A permutation group.
 */
typedef struct ClexpGroup ClexpGroup;

/**
 * The conjugacy classes of a group, with products computed on demand.
 */
typedef struct ClexpPartition ClexpPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *clexp_version(void);

/**
 * Message for the last failed call on this thread; valid until the next call.
 */
const char *clexp_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void clexp_string_free(char *s);

/**
 * Builds a group from a spec such as `psl2:7` or `wreath(sym:3,2)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a writable pointer.
 */
enum ClexpStatus clexp_group_from_spec(const char *spec, struct ClexpGroup **out);

/**
 * # Safety
 * `g` must be NULL or a handle from [`clexp_group_from_spec`] not yet freed.
 */
void clexp_group_free(struct ClexpGroup *g);

/**
 * # Safety
 * `g` must be a live group handle and `out` a writable pointer.
 */
enum ClexpStatus clexp_group_order(const struct ClexpGroup *g, uint64_t *out);

/**
 * # Safety
 * `g` must be a live group handle and `out` a writable pointer.
 */
enum ClexpStatus clexp_group_degree(const struct ClexpGroup *g, size_t *out);

/**
 * Whether the permutation written in cycle notation lies in the group.
 *
 * # Safety
 * `g` must be a live group handle, `cycles` a NUL-terminated string and `out`
 * a writable pointer.
 */
enum ClexpStatus clexp_group_contains(const struct ClexpGroup *g, const char *cycles, bool *out);

/**
 * Computes the conjugacy classes.
 *
 * # Safety
 * `g` must be a live group handle and `out` a writable pointer.
 */
enum ClexpStatus clexp_partition_new(const struct ClexpGroup *g, struct ClexpPartition **out);

/**
 * # Safety
 * `p` must be NULL or a handle from [`clexp_partition_new`] not yet freed.
 */
void clexp_partition_free(struct ClexpPartition *p);

/**
 * # Safety
 * `p` must be a live partition handle and `out` a writable pointer.
 */
enum ClexpStatus clexp_partition_num_classes(const struct ClexpPartition *p, size_t *out);

/**
 * Name, size and element order of class `index`. The name is caller-owned.
 *
 * # Safety
 * `p` must be a live partition handle; each output pointer must be writable.
 */
enum ClexpStatus clexp_partition_class(const struct ClexpPartition *p,
                                       size_t index,
                                       char **name,
                                       uint64_t *size,
                                       uint64_t *order);

/**
 * `D_K` for the comma-separated classes `K`, as a caller-owned comma-separated list.
 *
 * # Safety
 * `p` must be a live partition handle, `classes` a NUL-terminated string and
 * `out` a writable pointer.
 */
enum ClexpStatus clexp_partition_dk(const struct ClexpPartition *p,
                                    const char *classes,
                                    char **out);

/**
 * `K²` as a caller-owned comma-separated list, and whether `K² ⊆ D_K`.
 *
 * # Safety
 * `p` must be a live partition handle, `classes` a NUL-terminated string and
 * both output pointers writable.
 */
enum ClexpStatus clexp_partition_square(const struct ClexpPartition *p,
                                        const char *classes,
                                        char **square,
                                        bool *expansion_holds);

/**
 * Whether the normal closure of the classes is soluble, and its order.
 *
 * # Safety
 * `p` must be a live partition handle, `classes` a NUL-terminated string and
 * both output pointers writable.
 */
enum ClexpStatus clexp_partition_span(const struct ClexpPartition *p,
                                      const char *classes,
                                      uint64_t *order,
                                      bool *soluble);

/**
 * Runs one registered verification check and returns its result as a
 * caller-owned JSON object; `passed` is true only for a pass.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `json` and `passed` writable pointers.
 */
enum ClexpStatus clexp_run_check(const char *id, uint64_t seed, char **json, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLEXP_H */
