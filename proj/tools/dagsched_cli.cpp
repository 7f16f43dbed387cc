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

// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dagsched/dagsched.h"

namespace {

struct GraphDeleter {
    void operator()(dags_graph* g) const { dags_graph_free(g); }
};
struct PlatformDeleter {
    void operator()(dags_platform* p) const { dags_platform_free(p); }
};
struct ScheduleDeleter {
    void operator()(dags_schedule* s) const { dags_schedule_free(s); }
};
using GraphPtr = std::unique_ptr<dags_graph, GraphDeleter>;
using PlatformPtr = std::unique_ptr<dags_platform, PlatformDeleter>;
using SchedulePtr = std::unique_ptr<dags_schedule, ScheduleDeleter>;

// Thrown after the diagnostic has been printed.
struct Failure {
    int code = 1;
};

void check(dags_status st) {
    if (st != DAGS_OK) {
        std::fprintf(stderr, "error: %s: %s\n", dags_status_name(st), dags_last_error());
        throw Failure{};
    }
}

GraphPtr load_graph(const std::string& path) {
    dags_graph* g = nullptr;
    check(dags_graph_from_file(path.c_str(), &g));
    return GraphPtr(g);
}

PlatformPtr load_platform(const std::string& path) {
    dags_platform* p = nullptr;
    check(dags_platform_from_file(path.c_str(), &p));
    return PlatformPtr(p);
}

std::string join_names(const dags_graph* g, dags_status (*list)(const dags_graph*, size_t*, size_t, size_t*)) {
    size_t count = 0;
    check(list(g, nullptr, 0, &count));
    std::vector<size_t> ids(count);
    check(list(g, ids.data(), ids.size(), &count));
    std::string out;
    for (size_t id : ids) {
        if (!out.empty()) out += ',';
        out += dags_graph_task_name(g, id);
    }
    return out;
}

struct GaFlags {
    dags_ga_config cfg{};
    std::string crossover = "mixed";

    GaFlags() { dags_ga_config_default(&cfg); }

    void add(CLI::App& app) {
        app.add_option("--pop", cfg.pop_size, "Population size")->capture_default_str();
        app.add_option("--iters", cfg.max_iters, "Maximum generations")->capture_default_str();
        app.add_option("--stagnation", cfg.stagnation_limit, "Stop after this many generations without improvement")
            ->capture_default_str();
        app.add_option("--pairs", cfg.pairs_per_generation, "Parent pairs per generation (0: pop/4)")
            ->capture_default_str();
        app.add_option("--mutation-rate", cfg.mutation_rate, "Per-child mutation probability")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        app.add_option("--crossover", crossover, "Crossover operator")
            ->check(CLI::IsMember({"order", "aligned", "mixed"}))
            ->capture_default_str();
        app.add_option("--seed", cfg.rng_seed, "RNG seed")->capture_default_str();
        app.add_option("--eval-threads", cfg.eval_threads, "Threads for fitness evaluation")->capture_default_str();
    }

    dags_ga_config resolve() const {
        static const std::map<std::string, dags_crossover> modes{{"order", DAGS_CROSSOVER_ORDER_PRESERVING},
                                                                 {"aligned", DAGS_CROSSOVER_TASK_ALIGNED},
                                                                 {"mixed", DAGS_CROSSOVER_MIXED}};
        dags_ga_config out = cfg;
        out.crossover = modes.at(crossover);
        return out;
    }
};

dags_comm_mode comm_mode(const std::string& flag) {
    return flag == "on" ? DAGS_COMM_INCLUDE_TRANSFER : DAGS_COMM_IGNORE_TRANSFER;
}

int cmd_validate(const std::string& dag_path, const std::string& platform_path) {
    GraphPtr g = load_graph(dag_path);
    PlatformPtr p = load_platform(platform_path);
    check(dags_platform_check(p.get(), g.get()));
    std::printf("%zu tasks, %zu machines, entry=%s, exit=%s\n", dags_graph_task_count(g.get()),
                dags_platform_machine_count(p.get()), join_names(g.get(), dags_graph_entries).c_str(),
                join_names(g.get(), dags_graph_exits).c_str());
    std::printf("acyclic: yes\n");
    return 0;
}

int cmd_heights(const std::string& dag_path) {
    GraphPtr g = load_graph(dag_path);
    std::vector<uint32_t> heights(dags_graph_task_count(g.get()));
    check(dags_graph_heights(g.get(), heights.data()));
    for (size_t i = 0; i < heights.size(); ++i) {
        std::printf("%s\t%u\n", dags_graph_task_name(g.get(), i), heights[i]);
    }
    return 0;
}

int cmd_schedule(const std::string& dag_path, const std::string& platform_path, const std::string& alg,
                 const GaFlags& ga, const std::string& comm, const std::string& out_path) {
    GraphPtr g = load_graph(dag_path);
    PlatformPtr p = load_platform(platform_path);
    dags_schedule* raw = nullptr;
    const dags_ga_config cfg = ga.resolve();
    if (alg == "ga") {
        check(dags_schedule_ga(g.get(), p.get(), &cfg, comm_mode(comm), &raw));
    } else {
        check(dags_schedule_minmin(g.get(), p.get(), comm_mode(comm), &raw));
    }
    SchedulePtr s(raw);

    if (out_path.empty() || out_path == "-") {
        size_t needed = 0;
        dags_schedule_log(s.get(), nullptr, 0, &needed);
        std::string buf(needed, '\0');
        check(dags_schedule_log(s.get(), buf.data(), buf.size(), &needed));
        std::fputs(buf.c_str(), stdout);
    } else {
        check(dags_schedule_write_log(s.get(), out_path.c_str()));
    }
    std::printf("algorithm: %s\n", alg.c_str());
    std::printf("makespan: %.6f\n", dags_schedule_makespan(s.get()));
    if (alg == "ga") {
        std::printf("iterations: %zu\n", dags_schedule_iterations(s.get()));
        std::printf("seed: %llu\n", static_cast<unsigned long long>(cfg.rng_seed));
    }
    return 0;
}

int cmd_bench(dags_bench_config cfg, const std::string& shapes, const GaFlags& ga, const std::string& comm,
              bool no_timing, const std::string& out_path) {
    cfg.shapes = shapes.empty() ? nullptr : shapes.c_str();
    cfg.ga = ga.resolve();
    cfg.comm = comm_mode(comm);
    cfg.timing = no_timing ? 0 : 1;
    dags_bench_summary summary{};
    check(dags_bench_run(&cfg, out_path.c_str(), &summary));
    std::printf("instances: %zu\n", summary.rows);
    std::printf("ga <= min-min: %.2f (%zu/%zu)\n", summary.ga_not_worse_fraction, summary.ga_not_worse,
                summary.rows);
    std::printf("ga below lower bound: %zu\n", summary.below_lower_bound);
    std::printf("seed violations: %zu, series violations: %zu\n", summary.seed_violations,
                summary.series_violations);
    return 0;
}

int cmd_gen(const dags_gen_spec& spec, const std::string& out_path) {
    dags_graph* raw = nullptr;
    check(dags_graph_generate(&spec, &raw));
    GraphPtr g(raw);
    check(dags_graph_write_file(g.get(), out_path.c_str()));
    std::printf("%zu tasks, %zu edges, width %zu, ccr %.2f, seed %llu -> %s\n", dags_graph_task_count(g.get()),
                dags_graph_edge_count(g.get()), spec.width, spec.ccr, static_cast<unsigned long long>(spec.seed),
                out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dependent-task scheduler: height-based GA and min-min baseline"};
    app.require_subcommand(1);

    std::string dag_path, platform_path, out_path, alg = "ga", comm = "on", shapes;
    GaFlags ga_schedule, ga_bench;

    auto* validate = app.add_subcommand("validate", "Parse a DAG and platform and report their structure");
    validate->add_option("dag", dag_path, "DAG document")->required();
    validate->add_option("platform", platform_path, "Platform document")->required();

    auto* heights = app.add_subcommand("heights", "Print the height of every task");
    heights->add_option("dag", dag_path, "DAG document")->required();

    auto* schedule = app.add_subcommand("schedule", "Schedule a DAG and write the schedule log");
    schedule->add_option("dag", dag_path, "DAG document")->required();
    schedule->add_option("platform", platform_path, "Platform document")->required();
    schedule->add_option("--alg", alg, "Scheduler")->check(CLI::IsMember({"ga", "minmin"}))->capture_default_str();
    schedule->add_option("--comm", comm, "Include transfer time")->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    schedule->add_option("--out", out_path, "Schedule log path (default: stdout)");
    ga_schedule.add(*schedule);

    dags_bench_config bench_cfg{};
    dags_bench_config_default(&bench_cfg);
    bool no_timing = false;
    auto* bench = app.add_subcommand("bench", "Run GA and min-min over a grid of generated instances");
    bench->add_option("--shapes", shapes, "Comma-separated TASKSxMACHINES[:WIDTH] (default: nine-shape grid)");
    bench->add_option("--seeds", bench_cfg.seeds, "Seeds per shape")->capture_default_str();
    bench->add_option("--ccr", bench_cfg.ccr, "Communication-to-computation ratio")->capture_default_str();
    bench->add_option("--speed-lo", bench_cfg.speed_lo, "Slowest machine speed")->capture_default_str();
    bench->add_option("--speed-hi", bench_cfg.speed_hi, "Fastest machine speed")->capture_default_str();
    bench->add_option("--threads", bench_cfg.threads, "Instances run concurrently")->capture_default_str();
    bench->add_option("--comm", comm, "Include transfer time")->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    bench->add_flag("--no-timing", no_timing, "Write 0 for ga_runtime_ms (byte-stable output)");
    bench->add_option("--out", out_path, "CSV path")->required();
    ga_bench.add(*bench);

    dags_gen_spec gen_spec{};
    dags_gen_spec_default(&gen_spec);
    auto* gen = app.add_subcommand("gen", "Generate a random layered DAG document");
    gen->add_option("--tasks", gen_spec.n_tasks, "Number of tasks")->capture_default_str();
    gen->add_option("--width", gen_spec.width, "Maximum tasks per layer")->capture_default_str();
    gen->add_option("--ccr", gen_spec.ccr, "Communication-to-computation ratio")->capture_default_str();
    gen->add_option("--work-lo", gen_spec.work_lo, "Minimum task work")->capture_default_str();
    gen->add_option("--work-hi", gen_spec.work_hi, "Maximum task work")->capture_default_str();
    gen->add_option("--bandwidth", gen_spec.bandwidth, "Reference bandwidth for the ccr")->capture_default_str();
    gen->add_option("--seed", gen_spec.seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", out_path, "Output DAG document")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(dag_path, platform_path);
        if (*heights) return cmd_heights(dag_path);
        if (*schedule) return cmd_schedule(dag_path, platform_path, alg, ga_schedule, comm, out_path);
        if (*bench) return cmd_bench(bench_cfg, shapes, ga_bench, comm, no_timing, out_path);
        if (*gen) return cmd_gen(gen_spec, out_path);
    } catch (const Failure& f) {
        return f.code;
    }
    return 1;
}
