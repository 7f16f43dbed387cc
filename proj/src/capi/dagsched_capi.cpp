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

#include "dagsched/dagsched.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "dag.hpp"
#include "dagio.hpp"
#include "error.hpp"
#include "evaluator.hpp"
#include "ga.hpp"
#include "minmin.hpp"
#include "platform.hpp"

using namespace dagsched;

struct dags_graph {
    std::shared_ptr<const TaskGraph> graph;
};

struct dags_platform {
    std::shared_ptr<const Platform> platform;
};

struct dags_schedule {
    std::shared_ptr<const TaskGraph> graph;
    std::shared_ptr<const Platform> platform;
    Chromosome chromosome;
    Timeline timeline;
    std::size_t iterations = 0;
    double seed_makespan = std::nan("");
};

namespace {

thread_local std::string g_last_error;

// Absolute tolerance for comparing simulated times.
constexpr double kTimeTolerance = 1e-9;

static_assert(static_cast<int>(ErrorCode::Internal) == DAGS_E_INTERNAL,
              "dags_status must mirror ErrorCode");

dags_status fail(dags_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
dags_status guarded(F&& body) {
    try {
        body();
        return DAGS_OK;
    } catch (const Error& e) {
        return fail(static_cast<dags_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(DAGS_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DAGS_E_INTERNAL, e.what());
    } catch (...) {
        return fail(DAGS_E_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

CommMode to_mode(dags_comm_mode m) {
    require(m == DAGS_COMM_INCLUDE_TRANSFER || m == DAGS_COMM_IGNORE_TRANSFER, "unknown comm mode");
    return m == DAGS_COMM_INCLUDE_TRANSFER ? CommMode::IncludeTransfer : CommMode::IgnoreTransfer;
}

GaConfig to_config(const dags_ga_config& c) {
    require(c.crossover >= DAGS_CROSSOVER_ORDER_PRESERVING && c.crossover <= DAGS_CROSSOVER_MIXED,
            "unknown crossover mode");
    GaConfig cfg;
    cfg.pop_size = c.pop_size;
    cfg.max_iters = c.max_iters;
    cfg.stagnation_limit = c.stagnation_limit;
    cfg.pairs_per_generation = c.pairs_per_generation;
    cfg.crossover = static_cast<CrossoverMode>(c.crossover);
    cfg.mutation_rate = c.mutation_rate;
    cfg.heuristic_seed_count = c.heuristic_seed_count;
    cfg.rng_seed = c.rng_seed;
    cfg.eval_threads = c.eval_threads;
    return cfg;
}

dags_status copy_out(const std::string& text, char* buf, std::size_t cap, std::size_t* needed) {
    if (needed) *needed = text.size() + 1;
    if (!buf || cap < text.size() + 1) {
        return fail(DAGS_E_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(cap) + " bytes, " +
                                                 std::to_string(text.size() + 1) + " needed");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return DAGS_OK;
}

dags_status list_tasks(const std::vector<TaskId>& ids, std::size_t* out, std::size_t cap, std::size_t* count) {
    if (count) *count = ids.size();
    for (std::size_t i = 0; i < ids.size() && i < cap && out; ++i) out[i] = ids[i].idx();
    return DAGS_OK;
}

std::string log_text(const dags_schedule& s) {
    std::ostringstream os;
    write_schedule_log(os, *s.graph, *s.platform, s.chromosome, s.timeline);
    return os.str();
}

}  // namespace

extern "C" {

const char* dags_last_error(void) { return g_last_error.c_str(); }

const char* dags_status_name(dags_status status) {
    if (status == DAGS_E_BUFFER_TOO_SMALL) return "BufferTooSmall";
    if (status < DAGS_OK || status > DAGS_E_INTERNAL) return "Unknown";
    return error_code_name(static_cast<ErrorCode>(status)).data();
}

dags_status dags_graph_from_json(const char* text, dags_graph** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = new dags_graph{std::make_shared<const TaskGraph>(parse_dag(text))};
    });
}

dags_status dags_graph_from_file(const char* path, dags_graph** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new dags_graph{std::make_shared<const TaskGraph>(load_dag(path))};
    });
}

void dags_gen_spec_default(dags_gen_spec* spec) {
    if (!spec) return;
    const GenSpec d;
    *spec = dags_gen_spec{d.n_tasks, d.width, d.ccr, d.work_lo, d.work_hi, d.bandwidth, d.seed};
}

dags_status dags_graph_generate(const dags_gen_spec* spec, dags_graph** out) {
    return guarded([&] {
        require(spec && out, "null argument");
        GenSpec s;
        s.n_tasks = spec->n_tasks;
        s.width = spec->width;
        s.ccr = spec->ccr;
        s.work_lo = spec->work_lo;
        s.work_hi = spec->work_hi;
        s.bandwidth = spec->bandwidth;
        s.seed = spec->seed;
        *out = new dags_graph{std::make_shared<const TaskGraph>(generate_random_dag(s).graph)};
    });
}

void dags_graph_free(dags_graph* graph) { delete graph; }

size_t dags_graph_task_count(const dags_graph* graph) { return graph ? graph->graph->size() : 0; }

size_t dags_graph_edge_count(const dags_graph* graph) { return graph ? graph->graph->edges().size() : 0; }

const char* dags_graph_task_key(const dags_graph* graph, size_t task) {
    if (!graph || task >= graph->graph->size()) return nullptr;
    return graph->graph->task(TaskId{task}).key.c_str();
}

const char* dags_graph_task_name(const dags_graph* graph, size_t task) {
    if (!graph || task >= graph->graph->size()) return nullptr;
    return graph->graph->task(TaskId{task}).name.c_str();
}

dags_status dags_graph_entries(const dags_graph* graph, size_t* out, size_t cap, size_t* count) {
    if (!graph) return fail(DAGS_E_INVALID_ARGUMENT, "null graph");
    return list_tasks(graph->graph->entries(), out, cap, count);
}

dags_status dags_graph_exits(const dags_graph* graph, size_t* out, size_t cap, size_t* count) {
    if (!graph) return fail(DAGS_E_INVALID_ARGUMENT, "null graph");
    return list_tasks(graph->graph->exits(), out, cap, count);
}

dags_status dags_graph_heights(const dags_graph* graph, uint32_t* out) {
    return guarded([&] {
        require(graph && out, "null argument");
        const HeightMap h = compute_heights(*graph->graph);
        std::copy(h.values.begin(), h.values.end(), out);
    });
}

dags_status dags_graph_to_json(const dags_graph* graph, char* buf, size_t cap, size_t* needed) {
    if (!graph) return fail(DAGS_E_INVALID_ARGUMENT, "null graph");
    return copy_out(serialize_dag(*graph->graph), buf, cap, needed);
}

dags_status dags_graph_write_file(const dags_graph* graph, const char* path) {
    return guarded([&] {
        require(graph && path, "null argument");
        write_file(path, serialize_dag(*graph->graph));
    });
}

dags_status dags_platform_from_json(const char* text, dags_platform** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = new dags_platform{std::make_shared<const Platform>(parse_platform(text))};
    });
}

dags_status dags_platform_from_file(const char* path, dags_platform** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new dags_platform{std::make_shared<const Platform>(load_platform(path))};
    });
}

void dags_platform_free(dags_platform* platform) { delete platform; }

size_t dags_platform_machine_count(const dags_platform* platform) {
    return platform ? platform->platform->size() : 0;
}

const char* dags_platform_machine_name(const dags_platform* platform, size_t machine) {
    if (!platform || machine >= platform->platform->size()) return nullptr;
    return platform->platform->machine(MachineId{machine}).name.c_str();
}

dags_status dags_platform_check(const dags_platform* platform, const dags_graph* graph) {
    return guarded([&] {
        require(platform && graph, "null argument");
        check_compatible(*platform->platform, *graph->graph);
    });
}

dags_status dags_lower_bound(const dags_graph* graph, const dags_platform* platform, double* out) {
    return guarded([&] {
        require(graph && platform && out, "null argument");
        *out = lower_bound(*graph->graph, *platform->platform);
    });
}

void dags_ga_config_default(dags_ga_config* cfg) {
    if (!cfg) return;
    const GaConfig d;
    *cfg = dags_ga_config{d.pop_size,
                          d.max_iters,
                          d.stagnation_limit,
                          d.pairs_per_generation,
                          static_cast<dags_crossover>(d.crossover),
                          d.mutation_rate,
                          d.heuristic_seed_count,
                          d.rng_seed,
                          d.eval_threads};
}

dags_status dags_schedule_ga(const dags_graph* graph, const dags_platform* platform, const dags_ga_config* cfg,
                             dags_comm_mode comm, dags_schedule** out) {
    return guarded([&] {
        require(graph && platform && out, "null argument");
        dags_ga_config defaults;
        dags_ga_config_default(&defaults);
        RunResult r = run(*graph->graph, *platform->platform, to_config(cfg ? *cfg : defaults), to_mode(comm));
        *out = new dags_schedule{graph->graph, platform->platform, std::move(r.best), std::move(r.timeline),
                                 r.stats.iterations, r.seed_makespan};
    });
}

dags_status dags_schedule_minmin(const dags_graph* graph, const dags_platform* platform, dags_comm_mode comm,
                                 dags_schedule** out) {
    return guarded([&] {
        require(graph && platform && out, "null argument");
        auto [c, tl] = min_min_schedule(*graph->graph, *platform->platform, to_mode(comm));
        *out = new dags_schedule{graph->graph, platform->platform, std::move(c), std::move(tl)};
    });
}

dags_status dags_schedule_evaluate(const dags_graph* graph, const dags_platform* platform, const size_t* tasks,
                                   const size_t* machines, size_t n, dags_comm_mode comm, dags_schedule** out) {
    return guarded([&] {
        require(graph && platform && out && (n == 0 || (tasks && machines)), "null argument");
        Chromosome c;
        for (size_t i = 0; i < n; ++i) {
            c.order.emplace_back(tasks[i]);
            c.machines.emplace_back(machines[i]);
        }
        Timeline tl = evaluate(*graph->graph, *platform->platform, c, to_mode(comm));
        *out = new dags_schedule{graph->graph, platform->platform, std::move(c), std::move(tl)};
    });
}

void dags_schedule_free(dags_schedule* schedule) { delete schedule; }

double dags_schedule_makespan(const dags_schedule* schedule) {
    return schedule ? schedule->timeline.makespan : std::nan("");
}

size_t dags_schedule_iterations(const dags_schedule* schedule) { return schedule ? schedule->iterations : 0; }

double dags_schedule_seed_makespan(const dags_schedule* schedule) {
    return schedule ? schedule->seed_makespan : std::nan("");
}

size_t dags_schedule_length(const dags_schedule* schedule) {
    return schedule ? schedule->chromosome.size() : 0;
}

dags_status dags_schedule_position(const dags_schedule* schedule, size_t position, size_t* task, size_t* machine) {
    if (!schedule || position >= schedule->chromosome.size()) {
        return fail(DAGS_E_INVALID_ARGUMENT, "position out of range");
    }
    if (task) *task = schedule->chromosome.order[position].idx();
    if (machine) *machine = schedule->chromosome.machines[position].idx();
    return DAGS_OK;
}

dags_status dags_schedule_task_times(const dags_schedule* schedule, size_t task, double* start, double* finish) {
    if (!schedule || task >= schedule->timeline.slots.size()) {
        return fail(DAGS_E_INVALID_ARGUMENT, "task out of range");
    }
    if (start) *start = schedule->timeline.slots[task].start;
    if (finish) *finish = schedule->timeline.slots[task].finish;
    return DAGS_OK;
}

dags_status dags_schedule_log(const dags_schedule* schedule, char* buf, size_t cap, size_t* needed) {
    if (!schedule) return fail(DAGS_E_INVALID_ARGUMENT, "null schedule");
    std::string text;
    const dags_status st = guarded([&] { text = log_text(*schedule); });
    if (st != DAGS_OK) return st;
    return copy_out(text, buf, cap, needed);
}

dags_status dags_schedule_write_log(const dags_schedule* schedule, const char* path) {
    return guarded([&] {
        require(schedule && path, "null argument");
        write_file(path, log_text(*schedule));
    });
}

void dags_bench_config_default(dags_bench_config* cfg) {
    if (!cfg) return;
    const BenchConfig d;
    cfg->shapes = nullptr;
    cfg->seeds = d.seeds;
    cfg->ccr = d.ccr;
    cfg->speed_lo = d.speed_lo;
    cfg->speed_hi = d.speed_hi;
    cfg->comm = DAGS_COMM_INCLUDE_TRANSFER;
    dags_ga_config_default(&cfg->ga);
    cfg->timing = d.timing ? 1 : 0;
    cfg->threads = d.threads;
}

dags_status dags_bench_run(const dags_bench_config* cfg, const char* csv_path, dags_bench_summary* summary) {
    return guarded([&] {
        require(cfg && csv_path, "null argument");
        BenchConfig bc;
        if (cfg->shapes && *cfg->shapes) bc.shapes = parse_bench_shapes(cfg->shapes);
        bc.seeds = cfg->seeds;
        bc.ccr = cfg->ccr;
        bc.speed_lo = cfg->speed_lo;
        bc.speed_hi = cfg->speed_hi;
        require(bc.speed_lo > 0.0 && bc.speed_lo <= bc.speed_hi, "speed range must satisfy 0 < lo <= hi");
        bc.mode = to_mode(cfg->comm);
        bc.ga = to_config(cfg->ga);
        bc.timing = cfg->timing != 0;
        bc.threads = cfg->threads;

        std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
        if (!csv) throw Error(ErrorCode::IoError, std::string("cannot open '") + csv_path + "' for writing");
        write_bench_csv_header(csv);

        dags_bench_summary s{};
        run_bench(bc, [&](const BenchOutcome& o) {
            write_bench_csv_row(csv, o.row);
            csv.flush();
            ++s.rows;
            if (o.row.ga_makespan <= o.row.minmin_makespan + kTimeTolerance) ++s.ga_not_worse;
            if (o.row.ga_makespan < o.row.lower_bound - kTimeTolerance) ++s.below_lower_bound;
            if (o.row.ga_makespan > o.seed_makespan) ++s.seed_violations;
            if (!o.series_non_increasing) ++s.series_violations;
        });
        s.ga_not_worse_fraction = s.rows ? static_cast<double>(s.ga_not_worse) / static_cast<double>(s.rows) : 0.0;
        if (summary) *summary = s;
    });
}

}  // extern "C"
