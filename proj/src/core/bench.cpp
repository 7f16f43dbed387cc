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

#include "bench.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "error.hpp"
#include "minmin.hpp"

namespace dagsched {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::size_t parse_count(std::string_view s, std::string_view whole) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || v == 0) {
        throw Error(ErrorCode::InvalidArgument, "bad shape '" + std::string(whole) + "'");
    }
    return v;
}

std::size_t default_width(std::size_t n_tasks) {
    for (const auto& s : default_bench_shapes()) {
        if (s.n_tasks == n_tasks) return s.width;
    }
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_tasks))));
}

BenchOutcome run_instance(const BenchConfig& cfg, std::size_t shape_index, std::uint64_t seed) {
    const BenchShape& shape = cfg.shapes[shape_index];
    const std::uint64_t base = mix(mix(seed) ^ (shape.n_tasks * 1000003ull + shape.n_machines * 1009ull + shape.width));

    GenSpec gen;
    gen.n_tasks = shape.n_tasks;
    gen.width = shape.width;
    gen.ccr = cfg.ccr;
    gen.work_lo = cfg.work_lo;
    gen.work_hi = cfg.work_hi;
    gen.bandwidth = cfg.bandwidth;
    gen.seed = base;
    const GeneratedDag dag = generate_random_dag(gen);
    const Platform platform =
        generate_platform(shape.n_machines, cfg.speed_lo, cfg.speed_hi, cfg.bandwidth, mix(base));

    GaConfig ga = cfg.ga;
    ga.rng_seed = seed;
    const RunResult result = run(dag.graph, platform, ga, cfg.mode);
    const auto minmin = min_min_schedule(dag.graph, platform, cfg.mode);

    BenchOutcome out;
    auto& row = out.row;
    row.instance = std::to_string(shape.n_tasks) + "x" + std::to_string(shape.n_machines) + "-s" +
                   std::to_string(seed);
    row.n_tasks = shape.n_tasks;
    row.n_machines = shape.n_machines;
    row.width = shape.width;
    row.ccr = cfg.ccr;
    row.comm_mode = cfg.mode;
    row.seed = seed;
    row.ga_makespan = *result.best.fitness;
    row.minmin_makespan = minmin.second.makespan;
    row.lower_bound = lower_bound(dag.graph, platform);
    row.ga_runtime_ms = cfg.timing ? result.stats.wall_ms : 0.0;
    out.seed_makespan = result.seed_makespan;
    const auto& series = result.stats.best_per_generation;
    for (std::size_t k = 1; k < series.size(); ++k) {
        if (series[k] > series[k - 1]) out.series_non_increasing = false;
    }
    return out;
}

}  // namespace

std::vector<BenchShape> default_bench_shapes() {
    return {{10, 2, 3},  {10, 7, 3},  {25, 2, 10}, {25, 7, 10}, {45, 2, 7},
            {45, 7, 7},  {2, 90, 1},  {10, 90, 3}, {40, 90, 10}};
}

std::vector<BenchShape> parse_bench_shapes(std::string_view text) {
    std::vector<BenchShape> shapes;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find(',', begin);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view item = text.substr(begin, end - begin);
        const std::size_t x = item.find('x');
        if (x == std::string_view::npos) {
            throw Error(ErrorCode::InvalidArgument, "bad shape '" + std::string(item) + "'");
        }
        const std::size_t colon = item.find(':', x);
        BenchShape s;
        s.n_tasks = parse_count(item.substr(0, x), item);
        s.n_machines = parse_count(item.substr(x + 1, colon == std::string_view::npos ? std::string_view::npos
                                                                                       : colon - x - 1),
                                   item);
        s.width = colon == std::string_view::npos ? default_width(s.n_tasks)
                                                  : parse_count(item.substr(colon + 1), item);
        shapes.push_back(s);
        begin = end + 1;
    }
    return shapes;
}

Platform generate_platform(std::size_t n_machines, double speed_lo, double speed_hi, double bandwidth,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> speed(speed_lo, speed_hi);
    std::vector<MachineSpec> machines;
    for (std::size_t i = 0; i < n_machines; ++i) {
        machines.push_back(MachineSpec{"m" + std::to_string(i + 1), "Machine" + std::to_string(i + 1),
                                       speed_lo == speed_hi ? speed_lo : speed(rng)});
    }
    return build_platform(std::move(machines), Link{bandwidth, 0.0}, {});
}

std::vector<BenchOutcome> run_bench(const BenchConfig& cfg,
                                    const std::function<void(const BenchOutcome&)>& sink) {
    validate(cfg.ga);
    if (cfg.seeds == 0) throw Error(ErrorCode::InvalidArgument, "seed count must be at least 1");

    struct Job {
        std::size_t shape;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < cfg.shapes.size(); ++s) {
        for (std::uint64_t seed = 1; seed <= cfg.seeds; ++seed) jobs.push_back({s, seed});
    }

    std::vector<BenchOutcome> out(jobs.size());
    const std::size_t batch = std::max(1u, cfg.threads);
    for (std::size_t first = 0; first < jobs.size(); first += batch) {
        const std::size_t last = std::min(jobs.size(), first + batch);
        std::vector<std::exception_ptr> errors(last - first);
        if (last - first == 1) {
            out[first] = run_instance(cfg, jobs[first].shape, jobs[first].seed);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t k = first; k < last; ++k) {
                pool.emplace_back([&, k] {
                    try {
                        out[k] = run_instance(cfg, jobs[k].shape, jobs[k].seed);
                    } catch (...) {
                        errors[k - first] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        if (sink) {
            for (std::size_t k = first; k < last; ++k) sink(out[k]);
        }
    }
    return out;
}

}  // namespace dagsched
