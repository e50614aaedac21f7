/*
 * crn.h - C interface to the cognitive radar network simulator.
 *
 * All handles are opaque. Every fallible call returns a crn_status; on
 * failure crn_last_error() holds a message for the calling thread until the
 * next failing call on that thread.
 */
#ifndef CRN_CRN_H
#define CRN_CRN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CRN_BUILDING_LIBRARY)
#    define CRN_API __declspec(dllexport)
#  else
#    define CRN_API __declspec(dllimport)
#  endif
#else
#  define CRN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crn_status {
    CRN_OK = 0,
    CRN_ERR_INVALID_ARGUMENT = 1,
    CRN_ERR_CONFIG = 2,
    CRN_ERR_IO = 3,
    CRN_ERR_PROTOCOL = 4,
    CRN_ERR_NUMERICAL = 5,
    CRN_ERR_LOGIC = 6,
    CRN_ERR_BUFFER_TOO_SMALL = 7,
    CRN_ERR_INTERNAL = 8
} crn_status;

typedef struct crn_config crn_config;
typedef struct crn_episode crn_episode;

/* Per-update-period sample of one episode. mean_age is NaN when the fusion
 * center has no active tracks. */
typedef struct crn_period_stats {
    int64_t period;
    int64_t cpi;
    double mean_age;
    int32_t missed;
    int32_t total_active;
    int32_t fc_tracks;
    int32_t available;
    int32_t unobservable;
    int32_t selected_count;
} crn_period_stats;

CRN_API const char* crn_version(void);
CRN_API const char* crn_last_error(void);
CRN_API const char* crn_status_string(crn_status status);

/* Configuration. Keys are the config-file keys (p_s, C, M, strategy, ...).
 * crn_config_set only parses; crn_config_validate derives p_s when it was
 * not set explicitly and checks every constraint. Runs validate a copy. */
CRN_API crn_status crn_config_create(crn_config** out);
CRN_API crn_status crn_config_load(const char* path, crn_config** out);
CRN_API crn_status crn_config_parse(const char* text, crn_config** out);
CRN_API void crn_config_destroy(crn_config* config);
CRN_API crn_status crn_config_set(crn_config* config, const char* key, const char* value);
CRN_API crn_status crn_config_validate(crn_config* config);
/* Writes the NUL-terminated value into buf. *needed (optional) receives the
 * required size including the terminator. */
CRN_API crn_status crn_config_get(const crn_config* config, const char* key, char* buf, size_t buf_len,
                                  size_t* needed);

/* Monte Carlo experiment over every (strategy, capacity) pair; writes
 * summary.json, error_cdf.csv, ages.csv and missed.csv into out_dir.
 * strategies: comma list of aoi|ucb|random, NULL for the config strategy.
 * capacities: comma list, NULL for the config C. out_dir NULL: config
 * output_dir. */
CRN_API crn_status crn_run(const crn_config* config, const char* strategies, const char* capacities,
                           const char* out_dir);

/* Follows one target tracked by `node` (1-based) for one episode and writes
 * trace.csv to out_path. target < 0 follows the first target the node
 * starts tracking. rows (optional) receives the row count. */
CRN_API crn_status crn_trace_node(const crn_config* config, int32_t node, int64_t target, uint64_t seed,
                                  const char* out_path, size_t* rows);

/* Single episode for inspection. */
CRN_API crn_status crn_episode_run(const crn_config* config, uint64_t seed, crn_episode** out);
CRN_API void crn_episode_destroy(crn_episode* episode);
CRN_API crn_status crn_episode_period_count(const crn_episode* episode, size_t* out);
CRN_API crn_status crn_episode_period(const crn_episode* episode, size_t index, crn_period_stats* out);
/* Copies the selected node ids (ascending) of period `index` into nodes.
 * *count receives the number of selected nodes. */
CRN_API crn_status crn_episode_selected(const crn_episode* episode, size_t index, int32_t* nodes,
                                        size_t capacity, size_t* count);
/* Peak age averaged over tracks refreshed after warm-up; NaN when none. */
CRN_API crn_status crn_episode_peak_age(const crn_episode* episode, double* out);

CRN_API double crn_expected_unobservable(double n_bar, double p_o, int32_t m);

#ifdef __cplusplus
}
#endif

#endif /* CRN_CRN_H */
