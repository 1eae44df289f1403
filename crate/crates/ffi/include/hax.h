#ifndef HAX_H
#define HAX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HaxStatus {
  HAX_STATUS_OK = 0,
  HAX_STATUS_NULL_ARGUMENT = 1,
  HAX_STATUS_INVALID_UTF8 = 2,
  HAX_STATUS_PARSE_ERROR = 3,
  HAX_STATUS_UNKNOWN_ENTRY = 4,
  HAX_STATUS_CHECKS_FAILED = 5,
  HAX_STATUS_OUT_OF_RANGE = 6,
  HAX_STATUS_PANIC = 7,
} HaxStatus;

/**
 * A parsed document.
 */
typedef struct HaxDocument HaxDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread; empty after a
 * success. Owned by the library and valid until the next call.
 */
const char *hax_last_error(void);

/**
 * Parses `.hax` text into a new document.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum HaxStatus hax_document_parse(const char *text, struct HaxDocument **out);

/**
 * Loads a shipped catalog entry.
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
enum HaxStatus hax_catalog_load(const char *name, struct HaxDocument **out);

/**
 * Number of catalog entries.
 */
uintptr_t hax_catalog_count(void);

/**
 * Name of catalog entry `index`, as a new string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HaxStatus hax_catalog_name(uintptr_t index, char **out);

/**
 * # Safety
 * `doc` must come from this library and not be used afterwards.
 */
void hax_document_free(struct HaxDocument *doc);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void hax_string_free(char *s);

/**
 * Number of objects in the document, or 0 for a null handle.
 *
 * # Safety
 * `doc` must be a live handle or null.
 */
uintptr_t hax_document_object_count(const struct HaxDocument *doc);

/**
 * Name and kind of object `index` as new strings.
 *
 * # Safety
 * `doc` must be a live handle; `name` and `kind` valid pointers.
 */
enum HaxStatus hax_document_object(const struct HaxDocument *doc,
                                   uintptr_t index,
                                   char **name,
                                   char **kind);

/**
 * Canonical `.hax` text of the document, as a new string.
 *
 * # Safety
 * `doc` must be a live handle and `out` a valid pointer.
 */
enum HaxStatus hax_document_emit(const struct HaxDocument *doc, char **out);

/**
 * Runs every object's validator. The JSON report is stored in `report`
 * (may be null); the status is `ChecksFailed` when any check fails.
 *
 * # Safety
 * `doc` must be a live handle; `report` a valid pointer or null.
 */
enum HaxStatus hax_document_validate(const struct HaxDocument *doc, char **report);

/**
 * Runs the command-line front end on `argv` (without the program name)
 * and returns its exit code; stdout and stderr text are stored as new
 * strings in `out` and `err` when those are non-null.
 *
 * # Safety
 * `argv` must hold `argc` valid C strings; `out` and `err` valid pointers or null.
 */
int hax_cli_run(int argc, const char *const *argv, char **out, char **err);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HAX_H */
