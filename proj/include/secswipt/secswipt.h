/* Stable C interface to the secure-SWIPT beamforming library.
 *
 * Every object is an opaque handle created and destroyed by this API; every
 * call returns a status code, with a human-readable detail available from
 * ssb_last_error() on the calling thread. Strings returned through char**
 * outputs are owned by the caller and must be released with ssb_string_free().
 */
#ifndef SECSWIPT_SECSWIPT_H
#define SECSWIPT_SECSWIPT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssb_status {
    SSB_OK = 0,
    SSB_ERR_INVALID_ARG = 1, /* null handle / unknown name / bad value */
    SSB_ERR_CONFIG = 2,      /* config file or key rejected */
    SSB_ERR_RUNTIME = 3      /* numerical or I/O failure while running */
} ssb_status;

typedef struct ssb_config ssb_config;   /* key-value configuration */
typedef struct ssb_channel ssb_channel; /* one channel realization */
typedef struct ssb_result ssb_result;   /* one scheme outcome */

/* Library version string, e.g. "1.0.0". Static storage; do not free. */
const char* ssb_version(void);

/* Detail message for the most recent failing call on this thread. Static
 * thread-local storage; do not free. Empty string when no error occurred. */
const char* ssb_last_error(void);

void ssb_string_free(char* s);

/* --- configuration -------------------------------------------------------- */

ssb_status ssb_config_create_default(ssb_config** out);
ssb_status ssb_config_load(const char* path, ssb_config** out);
/* Dotted keys, e.g. ssb_config_set(cfg, "network.k", "3"). Unknown keys are
 * rejected so typos cannot silently fall back to defaults. */
ssb_status ssb_config_set(ssb_config* cfg, const char* key, const char* value);
ssb_status ssb_config_get(const ssb_config* cfg, const char* key, char** out_value);
void ssb_config_destroy(ssb_config* cfg);

/* --- channel realizations -------------------------------------------------- */

ssb_status ssb_channel_generate(const ssb_config* cfg, uint64_t seed, ssb_channel** out);
ssb_status ssb_channel_to_json(const ssb_channel* ch, char** out_json);
void ssb_channel_destroy(ssb_channel* ch);

/* --- scheme runs ----------------------------------------------------------- */

/* scheme is one of "proposed", "no_an", "zf". */
ssb_status ssb_run_scheme(const ssb_config* cfg, const ssb_channel* ch, const char* scheme,
                          ssb_result** out);

ssb_status ssb_result_feasible(const ssb_result* r, int* out);
ssb_status ssb_result_secrecy_rate(const ssb_result* r, double* out);
ssb_status ssb_result_iterations(const ssb_result* r, int* out);
ssb_status ssb_result_worst_violation(const ssb_result* r, double* out);
ssb_status ssb_result_message(const ssb_result* r, char** out_message);
/* Full document: solution vectors, audit, and per-iteration trace. */
ssb_status ssb_result_to_json(const ssb_result* r, char** out_json);
void ssb_result_destroy(ssb_result* r);

/* --- experiments ----------------------------------------------------------- */

/* which is one of "single", "sweep-power", "runtime-vs-k". Writes results.csv,
 * timings.csv, summary.json (and any traces) into out_dir, creating it if
 * needed; seed is used by "single" and ignored by the sweeps. When
 * out_summary_json is non-null it receives the summary document. */
ssb_status ssb_run_experiment(const ssb_config* cfg, const char* which, uint64_t seed,
                              const char* out_dir, char** out_summary_json);

#ifdef __cplusplus
}
#endif

#endif
