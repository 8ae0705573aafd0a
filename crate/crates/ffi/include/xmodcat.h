/* SPDX-License-Identifier: Apache-2.0 */

#ifndef XMODCAT_H
#define XMODCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; `1`–`3` match the CLI exit codes.
 */
typedef enum XmcStatus {
  XMC_STATUS_OK = 0,
  XMC_STATUS_CLAIM_FAILED = 1,
  XMC_STATUS_INVALID_INPUT = 2,
  XMC_STATUS_GUARD_TRIPPED = 3,
  XMC_STATUS_NULL_POINTER = 4,
  XMC_STATUS_PANIC = 5,
} XmcStatus;

/**
 * The graded categorical group of a validated module.
 */
typedef struct XmcCatGroup XmcCatGroup;

/**
 * A finite group given by its Cayley table.
 */
typedef struct XmcGroup XmcGroup;

/**
 * A braided Γ-crossed module, validated or not.
 */
typedef struct XmcModule XmcModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or NULL if none.
 * Release it with `xmc_string_free`.
 */
char *xmc_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void xmc_string_free(char *s);

/**
 * Builds a group from a row-major `order × order` table with identity 0.
 *
 * # Safety
 * `table` must point to `order * order` readable values; `out` must be writable.
 */
enum XmcStatus xmc_group_from_table(const size_t *table, size_t order, struct XmcGroup **out);

/**
 * # Safety
 * `g` must be a live group handle or NULL.
 */
size_t xmc_group_order(const struct XmcGroup *g);

/**
 * # Safety
 * `g` must be NULL or a handle from `xmc_group_from_table`, not yet freed.
 */
void xmc_group_free(struct XmcGroup *g);

/**
 * Parses a module in the scenario JSON form (explicit tables or
 * `{"conjugation": ...}`). Modules failing the axioms are still returned.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum XmcStatus xmc_module_from_json(const char *json, struct XmcModule **out);

/**
 * Runs the axiom checks; `Ok` when all pass, `ClaimFailed` otherwise. The
 * per-axiom report is written to `report_json` when it is not NULL.
 *
 * # Safety
 * `m` must be a live module handle; `report_json` NULL or writable.
 */
enum XmcStatus xmc_module_validate(const struct XmcModule *m, char **report_json);

/**
 * # Safety
 * `m` must be a live module handle; `out` writable.
 */
enum XmcStatus xmc_module_is_symmetric(const struct XmcModule *m, bool *out);

/**
 * # Safety
 * `m` must be NULL or a handle from `xmc_module_from_json`, not yet freed.
 */
void xmc_module_free(struct XmcModule *m);

/**
 * Builds the graded categorical group; `InvalidInput` if the module fails
 * the axioms.
 *
 * # Safety
 * `m` must be a live module handle; `out` writable.
 */
enum XmcStatus xmc_catgroup_build(const struct XmcModule *m, struct XmcCatGroup **out);

/**
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t xmc_catgroup_object_count(const struct XmcCatGroup *g);

/**
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t xmc_catgroup_morphism_count(const struct XmcCatGroup *g);

/**
 * Checks the graded categorical group axioms; see `xmc_module_validate`.
 *
 * # Safety
 * `g` must be a live handle; `report_json` NULL or writable.
 */
enum XmcStatus xmc_catgroup_check(const struct XmcCatGroup *g, char **report_json);

/**
 * # Safety
 * `g` must be NULL or a handle from `xmc_catgroup_build`, not yet freed.
 */
void xmc_catgroup_free(struct XmcCatGroup *g);

/**
 * Runs a scenario given as JSON text. The JSON report, identical to the
 * CLI's `--json` output, is written to `report_json` whenever the status is
 * 0–3.
 *
 * # Safety
 * `scenario` must be a nul-terminated string; `report_json` writable.
 */
enum XmcStatus xmc_run_scenario_json(const char *scenario, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XMODCAT_H */
