#ifndef SCRAP_SCRAP_H
#define SCRAP_SCRAP_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SCRAP_BUILDING_LIBRARY)
#    define SCRAP_API __declspec(dllexport)
#  else
#    define SCRAP_API __declspec(dllimport)
#  endif
#else
#  define SCRAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scrap_status {
    SCRAP_OK = 0,
    SCRAP_INVALID = 1,   /* bad config, argument or parameter */
    SCRAP_NUMERICAL = 2, /* integrator or eigensolver failure */
    SCRAP_IO = 3,
    SCRAP_INTERNAL = 4
} scrap_status;

typedef struct scrap_config scrap_config;
typedef struct scrap_summary scrap_summary;
typedef struct scrap_spectrum scrap_spectrum;

/* Message of the last failed call on this thread; empty string if none. */
SCRAP_API const char* scrap_last_error(void);
SCRAP_API const char* scrap_status_name(scrap_status status);
SCRAP_API const char* scrap_version(void);

/* Configs: YAML or JSON text; a summary.json is accepted and its metadata reused. */
SCRAP_API scrap_status scrap_config_load(const char* path, scrap_config** out);
SCRAP_API scrap_status scrap_config_parse(const char* text, scrap_config** out);
SCRAP_API void scrap_config_free(scrap_config* config);
SCRAP_API scrap_status scrap_config_set_scenario(scrap_config* config, const char* name);
SCRAP_API scrap_status scrap_config_set_output_dir(scrap_config* config, const char* dir);
SCRAP_API scrap_status scrap_config_set_tol(scrap_config* config, double tol);
/* Resolved config as JSON; the pointer lives until the next call on the same handle. */
SCRAP_API scrap_status scrap_config_json(scrap_config* config, const char** out);

/* Runs the configured scenario, writes its artifacts and summary.json to the output directory. */
SCRAP_API scrap_status scrap_run(const scrap_config* config, scrap_summary** out);
SCRAP_API void scrap_summary_free(scrap_summary* summary);
SCRAP_API scrap_status scrap_summary_json(const scrap_summary* summary, const char** out);
SCRAP_API scrap_status scrap_summary_path(const scrap_summary* summary, const char** out);
SCRAP_API scrap_status scrap_summary_metric(const scrap_summary* summary, const char* name, double* out);
SCRAP_API size_t scrap_summary_warning_count(const scrap_summary* summary);
SCRAP_API const char* scrap_summary_warning(const scrap_summary* summary, size_t index);

/* Bound states of a single junction. Capacitance in pF, critical current in uA. */
SCRAP_API scrap_status scrap_spectrum_compute(double capacitance_pF, double critical_current_uA,
                                              double bias_ratio, size_t grid_points, double box_margin,
                                              size_t levels, scrap_spectrum** out);
SCRAP_API void scrap_spectrum_free(scrap_spectrum* spectrum);
SCRAP_API size_t scrap_spectrum_levels(const scrap_spectrum* spectrum);
/* Energy above the well bottom, rad/ns. */
SCRAP_API scrap_status scrap_spectrum_energy(const scrap_spectrum* spectrum, size_t level, double* out);
SCRAP_API scrap_status scrap_spectrum_delta(const scrap_spectrum* spectrum, size_t i, size_t j, double* out);
/* <i| d/d delta |j>; the momentum element is -i times this. */
SCRAP_API scrap_status scrap_spectrum_dmom(const scrap_spectrum* spectrum, size_t i, size_t j, double* out);

SCRAP_API scrap_status scrap_landau_zener(double rabi_gap, double sweep_rate, double* out);

#ifdef __cplusplus
}
#endif

#endif
