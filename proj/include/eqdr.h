#ifndef EQDR_H
#define EQDR_H

/* C interface to the equivariant de Rham engine. All strings are UTF-8 and
 * NUL-terminated. Strings returned through char** must be released with
 * eqdr_string_free; handles with their matching *_free function. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define EQDR_API __declspec(dllexport)
#else
#define EQDR_API __attribute__((visibility("default")))
#endif

/* The first four values double as process exit codes. */
typedef enum eqdr_status {
  EQDR_OK = 0,
  EQDR_CHECK_FAILED = 1,
  EQDR_PARSE_ERROR = 2,
  EQDR_INTERNAL_ERROR = 3,
  EQDR_INVALID_ARGUMENT = 4
} eqdr_status;

typedef enum eqdr_format { EQDR_FORMAT_HUMAN = 0, EQDR_FORMAT_MACHINE = 1 } eqdr_format;

typedef struct eqdr_document eqdr_document;
typedef struct eqdr_report eqdr_report;

/* Unset strings are NULL. Exactly one of builtin / model_path is used by
 * eqdr_execute; eqdr_execute_document ignores both. */
typedef struct eqdr_options {
  const char* command;
  const char* builtin;
  const char* model_path;
  const char* lie;
  int max_degree;
  const char* poly;
  const char* element;
  const char* direction;
  const char* connection;
  int base;
  int timing;
} eqdr_options;

EQDR_API void eqdr_options_init(eqdr_options* options);

/* Message of the most recent failed call on this thread, or "". */
EQDR_API const char* eqdr_last_error(void);
EQDR_API void eqdr_string_free(char* text);

EQDR_API size_t eqdr_builtin_count(void);
EQDR_API const char* eqdr_builtin_name(size_t index);
EQDR_API size_t eqdr_command_count(void);
EQDR_API const char* eqdr_command_name(size_t index);

EQDR_API eqdr_status eqdr_document_from_builtin(const char* name, eqdr_document** out);
EQDR_API eqdr_status eqdr_document_parse(const char* text, eqdr_document** out);
EQDR_API eqdr_status eqdr_document_load(const char* path, eqdr_document** out);
EQDR_API eqdr_status eqdr_document_serialize(const eqdr_document* doc, char** out);
/* 1 if equal, 0 otherwise (and for NULL arguments). */
EQDR_API int eqdr_document_equal(const eqdr_document* a, const eqdr_document* b);
EQDR_API void eqdr_document_free(eqdr_document* doc);

/* A report is produced whenever the options are usable, including for
 * failed checks and parse errors; the returned status is its exit code. */
EQDR_API eqdr_status eqdr_execute(const eqdr_options* options, eqdr_report** out);
EQDR_API eqdr_status eqdr_execute_document(const eqdr_document* doc, const char* label, const eqdr_options* options,
                                           eqdr_report** out);

EQDR_API eqdr_status eqdr_report_render(const eqdr_report* report, eqdr_format format, char** out);
EQDR_API int eqdr_report_exit_code(const eqdr_report* report);
/* Borrowed; valid until the report is freed. "" when there is no error. */
EQDR_API const char* eqdr_report_error(const eqdr_report* report);
EQDR_API void eqdr_report_free(eqdr_report* report);

#ifdef __cplusplus
}
#endif

#endif
