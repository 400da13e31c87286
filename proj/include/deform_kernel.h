#ifndef DEFORM_KERNEL_H
#define DEFORM_KERNEL_H

/* C interface of the deformation workbench: scenarios in, reports out.
   Strings returned by accessors are owned by the handle they come from.
   Error messages are kept per thread until the next failing call. */

#if defined(_WIN32)
#  if defined(DK_BUILDING_LIBRARY)
#    define DK_API __declspec(dllexport)
#  else
#    define DK_API __declspec(dllimport)
#  endif
#else
#  define DK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dk_status {
  DK_OK = 0,
  DK_ERR_ARGUMENT = 1,      /* null handle or unreadable input */
  DK_ERR_SCHEMA = 2,        /* scenario rejected; see dk_error_pointer() */
  DK_ERR_STABILIZATION = 3, /* no stable window; see dk_error_suggested_window() */
  DK_ERR_VERIFICATION = 4,  /* report failed verification; failures in dk_error_message() */
  DK_ERR_INTERNAL = 5
} dk_status;

typedef struct dk_scenario dk_scenario;
typedef struct dk_report dk_report;

DK_API const char* dk_version(void);

/* window <= 0 keeps the scenario's own option. */
DK_API dk_status dk_scenario_parse(const char* json, int window, dk_scenario** out);
DK_API void dk_scenario_free(dk_scenario* s);
DK_API const char* dk_scenario_hash(const dk_scenario* s);
DK_API const char* dk_scenario_canonical(const dk_scenario* s);

DK_API dk_status dk_run(const dk_scenario* s, dk_report** out);

DK_API dk_status dk_report_parse(const char* json, dk_report** out);
DK_API void dk_report_free(dk_report* r);
/* Indented JSON ending in a newline; byte-identical for identical scenarios. */
DK_API const char* dk_report_json(const dk_report* r);
DK_API const char* dk_report_table(const dk_report* r);
DK_API dk_status dk_report_verify(const dk_report* r);

DK_API const char* dk_error_message(void);
DK_API const char* dk_error_pointer(void);
DK_API int dk_error_suggested_window(void);

#ifdef __cplusplus
}
#endif

#endif
