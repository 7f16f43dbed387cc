/*
Copyright 2026 The dagsched Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/*
 * C interface to the dagsched scheduling engine.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a dags_status; on
 * failure, dags_last_error() returns a message for the calling thread that
 * stays valid until that thread's next failing call.
 *
 * Task and machine indices are declaration positions in their documents.
 */

#ifndef DAGSCHED_DAGSCHED_H
#define DAGSCHED_DAGSCHED_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DAGS_BUILDING_LIBRARY)
#    define DAGS_API __declspec(dllexport)
#  else
#    define DAGS_API __declspec(dllimport)
#  endif
#else
#  define DAGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dags_status {
    DAGS_OK = 0,
    DAGS_E_INVALID_ARGUMENT,
    DAGS_E_DUPLICATE_TASK_ID,
    DAGS_E_DUPLICATE_EDGE,
    DAGS_E_UNKNOWN_EDGE_ENDPOINT,
    DAGS_E_CYCLE_DETECTED,
    DAGS_E_SELF_LOOP,
    DAGS_E_NOT_READY,
    DAGS_E_DUPLICATE_MACHINE_ID,
    DAGS_E_UNKNOWN_MACHINE,
    DAGS_E_NO_LINK_DEFINED,
    DAGS_E_INVALID_ORDER,
    DAGS_E_SYNTAX,
    DAGS_E_SCHEMA,
    DAGS_E_NON_POSITIVE_SPEED,
    DAGS_E_NON_POSITIVE_BANDWIDTH,
    DAGS_E_INFEASIBLE_SPEC,
    DAGS_E_IO,
    DAGS_E_INTERNAL,
    DAGS_E_BUFFER_TOO_SMALL
} dags_status;

typedef enum dags_comm_mode {
    DAGS_COMM_INCLUDE_TRANSFER = 0,
    DAGS_COMM_IGNORE_TRANSFER = 1
} dags_comm_mode;

typedef enum dags_crossover {
    DAGS_CROSSOVER_ORDER_PRESERVING = 0,
    DAGS_CROSSOVER_TASK_ALIGNED = 1,
    DAGS_CROSSOVER_MIXED = 2
} dags_crossover;

typedef struct dags_graph dags_graph;
typedef struct dags_platform dags_platform;
typedef struct dags_schedule dags_schedule;

typedef struct dags_ga_config {
    size_t pop_size;
    size_t max_iters;
    size_t stagnation_limit;
    size_t pairs_per_generation; /* 0: pop_size / 4 */
    dags_crossover crossover;
    double mutation_rate;
    size_t heuristic_seed_count;
    uint64_t rng_seed;
    unsigned eval_threads;
} dags_ga_config;

typedef struct dags_gen_spec {
    size_t n_tasks;
    size_t width;
    double ccr;
    double work_lo;
    double work_hi;
    double bandwidth;
    uint64_t seed;
} dags_gen_spec;

typedef struct dags_bench_config {
    const char* shapes; /* "10x2,25x7:10"; NULL or "" selects the default grid */
    size_t seeds;
    double ccr;
    double speed_lo;
    double speed_hi;
    dags_comm_mode comm;
    dags_ga_config ga; /* rng_seed is replaced per instance */
    int timing;        /* 0 writes 0 into ga_runtime_ms */
    unsigned threads;
} dags_bench_config;

typedef struct dags_bench_summary {
    size_t rows;
    size_t ga_not_worse;        /* rows with ga_makespan <= minmin_makespan */
    size_t below_lower_bound;   /* rows with ga_makespan < lower_bound */
    size_t seed_violations;     /* rows where GA best exceeds the load-balanced seed */
    size_t series_violations;   /* rows whose best-fitness series increased */
    double ga_not_worse_fraction;
} dags_bench_summary;

DAGS_API const char* dags_last_error(void);
DAGS_API const char* dags_status_name(dags_status status);

/* Task graphs */
DAGS_API dags_status dags_graph_from_json(const char* text, dags_graph** out);
DAGS_API dags_status dags_graph_from_file(const char* path, dags_graph** out);
DAGS_API dags_status dags_graph_generate(const dags_gen_spec* spec, dags_graph** out);
DAGS_API void dags_gen_spec_default(dags_gen_spec* spec);
DAGS_API void dags_graph_free(dags_graph* graph);
DAGS_API size_t dags_graph_task_count(const dags_graph* graph);
DAGS_API size_t dags_graph_edge_count(const dags_graph* graph);
DAGS_API const char* dags_graph_task_key(const dags_graph* graph, size_t task);
DAGS_API const char* dags_graph_task_name(const dags_graph* graph, size_t task);
/* Writes up to cap indices; *count receives the total. */
DAGS_API dags_status dags_graph_entries(const dags_graph* graph, size_t* out, size_t cap, size_t* count);
DAGS_API dags_status dags_graph_exits(const dags_graph* graph, size_t* out, size_t cap, size_t* count);
/* out must hold dags_graph_task_count() values. */
DAGS_API dags_status dags_graph_heights(const dags_graph* graph, uint32_t* out);
/* Serialized document; *needed receives the size including the terminator. */
DAGS_API dags_status dags_graph_to_json(const dags_graph* graph, char* buf, size_t cap, size_t* needed);
DAGS_API dags_status dags_graph_write_file(const dags_graph* graph, const char* path);

/* Platforms */
DAGS_API dags_status dags_platform_from_json(const char* text, dags_platform** out);
DAGS_API dags_status dags_platform_from_file(const char* path, dags_platform** out);
DAGS_API void dags_platform_free(dags_platform* platform);
DAGS_API size_t dags_platform_machine_count(const dags_platform* platform);
DAGS_API const char* dags_platform_machine_name(const dags_platform* platform, size_t machine);
/* Checks that the platform's optional ETC matrix covers the graph. */
DAGS_API dags_status dags_platform_check(const dags_platform* platform, const dags_graph* graph);
DAGS_API dags_status dags_lower_bound(const dags_graph* graph, const dags_platform* platform, double* out);

/* Scheduling */
DAGS_API void dags_ga_config_default(dags_ga_config* cfg);
DAGS_API dags_status dags_schedule_ga(const dags_graph* graph, const dags_platform* platform,
                                      const dags_ga_config* cfg, dags_comm_mode comm, dags_schedule** out);
DAGS_API dags_status dags_schedule_minmin(const dags_graph* graph, const dags_platform* platform,
                                          dags_comm_mode comm, dags_schedule** out);
/* Evaluates an explicit assignment: machines[i] hosts tasks[i]. */
DAGS_API dags_status dags_schedule_evaluate(const dags_graph* graph, const dags_platform* platform,
                                            const size_t* tasks, const size_t* machines, size_t n,
                                            dags_comm_mode comm, dags_schedule** out);
DAGS_API void dags_schedule_free(dags_schedule* schedule);
DAGS_API double dags_schedule_makespan(const dags_schedule* schedule);
/* GA only; 0 for other schedules. */
DAGS_API size_t dags_schedule_iterations(const dags_schedule* schedule);
DAGS_API double dags_schedule_seed_makespan(const dags_schedule* schedule);
DAGS_API size_t dags_schedule_length(const dags_schedule* schedule);
DAGS_API dags_status dags_schedule_position(const dags_schedule* schedule, size_t position, size_t* task,
                                            size_t* machine);
DAGS_API dags_status dags_schedule_task_times(const dags_schedule* schedule, size_t task, double* start,
                                              double* finish);
DAGS_API dags_status dags_schedule_log(const dags_schedule* schedule, char* buf, size_t cap, size_t* needed);
DAGS_API dags_status dags_schedule_write_log(const dags_schedule* schedule, const char* path);

/* Benchmark grid: GA vs min-min, CSV written to csv_path (flushed per batch). */
DAGS_API void dags_bench_config_default(dags_bench_config* cfg);
DAGS_API dags_status dags_bench_run(const dags_bench_config* cfg, const char* csv_path,
                                    dags_bench_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* DAGSCHED_DAGSCHED_H */
