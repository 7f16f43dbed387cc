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

#include <optional>
#include <vector>

#include "dag.hpp"
#include "platform.hpp"

namespace dagsched {

/// One candidate schedule: machines[i] hosts order[i].
struct Chromosome {
    std::vector<TaskId> order;
    std::vector<MachineId> machines;
    std::optional<double> fitness;

    std::size_t size() const { return order.size(); }
    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct TaskSlot {
    double start = 0.0;
    double finish = 0.0;
    MachineId machine;
    friend bool operator==(const TaskSlot&, const TaskSlot&) = default;
};

/// Indexed by TaskId.
struct Timeline {
    std::vector<TaskSlot> slots;
    double makespan = 0.0;

    const TaskSlot& operator[](TaskId t) const { return slots[t.idx()]; }
    friend bool operator==(const Timeline&, const Timeline&) = default;
};

enum class CommMode { IncludeTransfer, IgnoreTransfer };

/// Simulates c in chromosome order with append-only machine queues. A task
/// starts at max(data ready, machine available). Stamps c.fitness.
/// Throws InvalidOrder when c is not a dependency-respecting permutation,
/// UnknownMachine for out-of-range machines, NoLinkDefined from transfers.
Timeline evaluate(const TaskGraph& g, const Platform& p, Chromosome& c,
                  CommMode mode = CommMode::IncludeTransfer);

/// Non-stamping overload.
Timeline evaluate(const TaskGraph& g, const Platform& p, const Chromosome& c,
                  CommMode mode = CommMode::IncludeTransfer);

/// Longest entry-to-exit path using each task's fastest execution time and
/// no communication.
double lower_bound(const TaskGraph& g, const Platform& p);

}  // namespace dagsched
