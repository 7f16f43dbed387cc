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

#include "minmin.hpp"

#include <algorithm>
#include <limits>

namespace dagsched {

std::pair<Chromosome, Timeline> min_min_schedule(const TaskGraph& g, const Platform& p, CommMode mode) {
    check_compatible(p, g);
    const std::size_t n = g.size();

    Chromosome c;
    c.order.reserve(n);
    c.machines.reserve(n);
    Timeline tl;
    tl.slots.resize(n);
    std::vector<double> available(p.size(), 0.0);
    std::vector<std::size_t> missing(n);
    std::vector<char> scheduled(n, 0);
    for (std::size_t i = 0; i < n; ++i) missing[i] = g.parents(TaskId{i}).size();

    // Same arithmetic as evaluate(), so the committed times match it bit for bit.
    auto data_ready = [&](TaskId t, MachineId m) {
        double ready = 0.0;
        const auto parents = g.parents(t);
        const auto in_edges = g.in_edges(t);
        for (std::size_t k = 0; k < parents.size(); ++k) {
            const auto& slot = tl.slots[parents[k].idx()];
            double arrival = slot.finish;
            if (mode == CommMode::IncludeTransfer) {
                arrival += transfer_time(p, g.edges()[in_edges[k]].bytes, slot.machine, m);
            }
            ready = std::max(ready, arrival);
        }
        return ready;
    };

    for (std::size_t step = 0; step < n; ++step) {
        double best_finish = std::numeric_limits<double>::infinity();
        double best_start = 0.0;
        TaskId best_task;
        MachineId best_machine;
        for (std::size_t i = 0; i < n; ++i) {
            if (scheduled[i] || missing[i] != 0) continue;
            const TaskId t{i};
            for (const auto& m : p.machines()) {
                const double start = std::max(data_ready(t, m.id), available[m.id.idx()]);
                const double finish = start + execution_time(p, g.task(t), m.id);
                if (finish < best_finish) {
                    best_finish = finish;
                    best_start = start;
                    best_task = t;
                    best_machine = m.id;
                }
            }
        }
        auto& slot = tl.slots[best_task.idx()];
        slot.start = best_start;
        slot.finish = best_finish;
        slot.machine = best_machine;
        available[best_machine.idx()] = best_finish;
        tl.makespan = std::max(tl.makespan, best_finish);
        scheduled[best_task.idx()] = 1;
        for (TaskId ch : g.children(best_task)) --missing[ch.idx()];
        c.order.push_back(best_task);
        c.machines.push_back(best_machine);
    }
    c.fitness = tl.makespan;
    return {std::move(c), std::move(tl)};
}

}  // namespace dagsched
