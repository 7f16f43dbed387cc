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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dag.hpp"
#include "evaluator.hpp"
#include "platform.hpp"

namespace dagsched {

// DAG document:
//   { "tasks": [{"id", "name"?, "work"}...], "edges": [{"src", "dst", "bytes"?}...] }
// Platform document:
//   { "machines": [{"id", "name"?, "speed"}...], "default_link"?: {"bandwidth", "latency"?},
//     "links"?: [{"src", "dst", "bandwidth", "latency"?}...], "etc"?: [[...]...] }
// Ids may be JSON strings or integers; integers are kept as their decimal text.

TaskGraph parse_dag(std::string_view text);
Platform parse_platform(std::string_view text);
std::string serialize_dag(const TaskGraph& g);
std::string serialize_platform(const Platform& p);

/// Reads a whole file; throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);
/// Writes atomically enough for our purposes (truncate + write); throws IoError.
void write_file(const std::filesystem::path& path, std::string_view contents);

TaskGraph load_dag(const std::filesystem::path& path);
Platform load_platform(const std::filesystem::path& path);

/// `Schedule <task> on <machine>` per task by ascending start (ties by
/// chromosome position), then `Simulation Time: <makespan>` with six decimals.
void write_schedule_log(std::ostream& out, const TaskGraph& g, const Platform& p, const Chromosome& c,
                        const Timeline& tl);

std::string format_fixed(double value, int decimals);

struct BenchRow {
    std::string instance;
    std::size_t n_tasks = 0;
    std::size_t n_machines = 0;
    std::size_t width = 0;
    double ccr = 0.0;
    CommMode comm_mode = CommMode::IncludeTransfer;
    std::uint64_t seed = 0;
    double ga_makespan = 0.0;
    double minmin_makespan = 0.0;
    double lower_bound = 0.0;
    double ga_runtime_ms = 0.0;
};

inline constexpr std::string_view kBenchCsvHeader =
    "instance,n_tasks,n_machines,width,ccr,comm_mode,seed,ga_makespan,minmin_makespan,lower_bound,"
    "ga_runtime_ms";

void write_bench_csv_header(std::ostream& out);
void write_bench_csv_row(std::ostream& out, const BenchRow& row);
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

struct GenSpec {
    std::size_t n_tasks = 10;
    std::size_t width = 3;     // max tasks per layer
    double ccr = 0.5;          // mean transfer time / mean execution time
    double work_lo = 5.0;
    double work_hi = 25.0;
    double bandwidth = 10.0;   // default link the ccr is calibrated against
    std::uint64_t seed = 1;
};

struct GeneratedDag {
    TaskGraph graph;
    std::vector<std::size_t> layer;  // per task
};

/// Layered DAG with one entry and one exit. Throws InfeasibleSpec.
GeneratedDag generate_random_dag(const GenSpec& spec);

}  // namespace dagsched
