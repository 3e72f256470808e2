/* C interface to the hprandtl stability lab. All handles are opaque; every
 * call that can fail returns an hp_status and leaves a message retrievable
 * with hp_last_error() on the calling thread. */
#ifndef HPRANDTL_H
#define HPRANDTL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HP_API __declspec(dllexport)
#else
#define HP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hp_status {
  HP_OK = 0,
  HP_ERR_INVALID_ARGUMENT = 1,
  HP_ERR_CONFIG = 2,
  HP_ERR_STABILITY = 3,
  HP_ERR_IO = 4,
  HP_ERR_INTERNAL = 5
} hp_status;

typedef struct hp_config hp_config;
typedef struct hp_run hp_run;

typedef struct hp_constants_out {
  double T_sigma;          /* +inf when U'' and U''' vanish */
  double alpha, beta, gamma; /* NaN when t >= T_sigma */
  double D_sigma;
  double C_sigma;
  double C2_sigma;
  double Ctilde_sigma;
  double curvature_weight; /* ||U'''|| + 2 ||U''|| */
} hp_constants_out;

HP_API const char* hp_version(void);

/* Message of the last failed call on this thread; "" if none. */
HP_API const char* hp_last_error(void);

/* Parses flat key=value text. *out is NULL on failure. */
HP_API hp_status hp_config_parse(const char* text, hp_config** out);
/* Applies one override and revalidates; the config is unchanged on failure. */
HP_API hp_status hp_config_set(hp_config* cfg, const char* key, const char* value);
/* Canonical key=value echo; owned by the config, valid until the next call on it. */
HP_API const char* hp_config_echo(hp_config* cfg);
HP_API void hp_config_free(hp_config* cfg);

HP_API hp_status hp_run_sweep(const hp_config* cfg, hp_run** out);
HP_API hp_status hp_run_simulate_mode(const hp_config* cfg, int k, hp_run** out);
HP_API hp_status hp_run_verify_gronwall(const hp_config* cfg, hp_run** out);

/* Writes trajectory.csv, checks.csv, growth.csv and manifest.json. A NULL
 * dir uses the configured output_dir. */
HP_API hp_status hp_run_write_outputs(const hp_run* run, const char* dir);

HP_API size_t hp_run_check_count(const hp_run* run);
HP_API size_t hp_run_failed_checks(const hp_run* run);
/* 1 when every evaluated check passed (including when none ran). */
HP_API int hp_run_all_checks_passed(const hp_run* run);
/* JSON summary (fits, comparison, tallies); owned by the run. */
HP_API const char* hp_run_summary_json(const hp_run* run);
/* CSV bodies; owned by the run. which: "trajectory", "checks" or "growth";
 * NULL for anything else. */
HP_API const char* hp_run_csv(const hp_run* run, const char* which);
HP_API void hp_run_free(hp_run* run);

/* Lifespan, radii and constants for a shear given as "poiseuille 4". */
HP_API hp_status hp_constants(double sigma, const char* shear, double t, hp_constants_out* out);

#ifdef __cplusplus
}
#endif

#endif
