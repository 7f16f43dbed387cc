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
#include <functional>
#include <string_view>
#include <vector>

#include "dagio.hpp"
#include "ga.hpp"

namespace dagsched {

struct BenchShape {
    std::size_t n_tasks = 0;
    std::size_t n_machines = 0;
    std::size_t width = 1;
};

/// Nine task/machine shapes with their parallel-width knob:
/// 10x2, 10x7, 25x2, 25x7, 45x2, 45x7 and 2x90, 10x90, 40x90.
std::vector<BenchShape> default_bench_shapes();

/// Parses "10x2,25x7:10" (tasks x machines, optional :width). Shapes without
/// a width take the default grid's width for that task count, else ceil(sqrt(n)).
std::vector<BenchShape> parse_bench_shapes(std::string_view text);

struct BenchConfig {
    std::vector<BenchShape> shapes = default_bench_shapes();
    std::size_t seeds = 20;
    double ccr = 0.5;
    double work_lo = 5.0;
    double work_hi = 25.0;
    double speed_lo = 1.0;
    double speed_hi = 4.0;
    double bandwidth = 10.0;
    CommMode mode = CommMode::IncludeTransfer;
    GaConfig ga;          // rng_seed is replaced by the instance seed
    bool timing = true;   // false writes 0 into ga_runtime_ms
    unsigned threads = 1; // instances run concurrently
};

/// Machines m1..mN named Machine1..MachineN with seeded uniform speeds and
/// a uniform default link.
Platform generate_platform(std::size_t n_machines, double speed_lo, double speed_hi, double bandwidth,
                           std::uint64_t seed);

struct BenchOutcome {
    BenchRow row;
    double seed_makespan = 0.0;
    bool series_non_increasing = true;
};

/// Runs the grid in shape-major, seed-minor order. `sink` receives outcomes
/// in that order, regardless of thread count.
std::vector<BenchOutcome> run_bench(const BenchConfig& cfg,
                                    const std::function<void(const BenchOutcome&)>& sink = {});

}  // namespace dagsched
