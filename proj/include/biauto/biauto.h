#ifndef BIAUTO_H
#define BIAUTO_H

#include <stddef.h>

#if defined(_WIN32)
#define BIA_API __declspec(dllexport)
#else
#define BIA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bia_structure bia_structure;
typedef struct bia_report bia_report;

typedef enum {
  BIA_OK = 0,
  BIA_ERR_INPUT = 1,
  BIA_ERR_PARSE = 2,
  BIA_ERR_PRECONDITION = 3,
  BIA_ERR_STRUCTURAL = 4,
  BIA_ERR_RESOURCE = 5,
  BIA_ERR_INTERNAL = 6
} bia_status;

typedef enum { BIA_FORMAT_HUMAN = 0, BIA_FORMAT_MACHINE = 1 } bia_format;

typedef struct {
  size_t max_len;      /* default 10 */
  size_t radius;       /* default 6 */
  const char* epsilon; /* rational, "p/q" or decimal; default "1/2" */
} bia_options;

BIA_API const char* bia_version(void);
BIA_API const char* bia_status_name(bia_status s);
/* Message of the last failed call on this thread; "" if none. */
BIA_API const char* bia_last_error(void);

BIA_API void bia_options_init(bia_options* o);

BIA_API bia_status bia_structure_builtin(const char* name, bia_structure** out);
BIA_API bia_status bia_structure_load_file(const char* path, bia_structure** out);
BIA_API bia_status bia_structure_parse(const char* text, bia_structure** out);
BIA_API bia_status bia_structure_set_z(bia_structure* s, const char* element);
BIA_API bia_status bia_structure_accepts(const bia_structure* s, const char* word, int* out);
/* *out is freed with bia_string_free. */
BIA_API bia_status bia_structure_evaluate(const bia_structure* s, const char* word, char** out);
BIA_API bia_status bia_structure_emit(const bia_structure* s, char** out);
BIA_API void bia_structure_free(bia_structure* s);
BIA_API void bia_string_free(char* p);

/* Builtin names, NULL-terminated. */
BIA_API const char* const* bia_builtin_names(void);

BIA_API bia_status bia_run_inspect(const bia_structure* s, const bia_options* o, bia_report** out);
BIA_API bia_status bia_run_verify(const bia_structure* s, const bia_options* o, bia_report** out);
/* central: NULL for the quotient by z, else comma-separated central elements. */
BIA_API bia_status bia_run_quotient(const bia_structure* s, const char* central, const bia_options* o,
                                    bia_report** out);
BIA_API bia_status bia_run_fan(const bia_structure* s, const bia_options* o, bia_report** out);

BIA_API int bia_report_passed(const bia_report* r);
/* Owned by the report; valid until bia_report_free. */
BIA_API const char* bia_report_render(bia_report* r, bia_format f);
/* Emitted structure file or subdivision listing; NULL when the command has none. */
BIA_API const char* bia_report_artifact(const bia_report* r);
BIA_API void bia_report_free(bia_report* r);

#ifdef __cplusplus
}
#endif

#endif
