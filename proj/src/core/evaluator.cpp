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

#include "evaluator.hpp"

#include <algorithm>
#include <limits>

#include "error.hpp"

namespace dagsched {

Timeline evaluate(const TaskGraph& g, const Platform& p, const Chromosome& c, CommMode mode) {
    const std::size_t n = g.size();
    if (c.order.size() != n || c.machines.size() != n) {
        throw Error(ErrorCode::InvalidOrder, "chromosome length " + std::to_string(c.order.size()) +
                                                 " does not match " + std::to_string(n) + " tasks");
    }
    check_compatible(p, g);

    Timeline tl;
    tl.slots.resize(n);
    std::vector<char> done(n, 0);
    std::vector<double> available(p.size(), 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const TaskId t = c.order[i];
        const MachineId m = c.machines[i];
        if (t.idx() >= n || done[t.idx()]) {
            throw Error(ErrorCode::InvalidOrder, "position " + std::to_string(i) +
                                                     " repeats or names an unknown task");
        }
        p.check_machine(m);

        double ready = 0.0;
        const auto parents = g.parents(t);
        const auto in_edges = g.in_edges(t);
        for (std::size_t k = 0; k < parents.size(); ++k) {
            const TaskId q = parents[k];
            if (!done[q.idx()]) {
                throw Error(ErrorCode::InvalidOrder, "task '" + g.task(t).key +
                                                         "' is placed before its parent '" +
                                                         g.task(q).key + "'");
            }
            double arrival = tl.slots[q.idx()].finish;
            if (mode == CommMode::IncludeTransfer) {
                arrival += transfer_time(p, g.edges()[in_edges[k]].bytes,
                                         tl.slots[q.idx()].machine, m);
            }
            ready = std::max(ready, arrival);
        }

        auto& slot = tl.slots[t.idx()];
        slot.machine = m;
        slot.start = std::max(ready, available[m.idx()]);
        slot.finish = slot.start + execution_time(p, g.task(t), m);
        available[m.idx()] = slot.finish;
        done[t.idx()] = 1;
        tl.makespan = std::max(tl.makespan, slot.finish);
    }
    return tl;
}

Timeline evaluate(const TaskGraph& g, const Platform& p, Chromosome& c, CommMode mode) {
    Timeline tl = evaluate(g, p, static_cast<const Chromosome&>(c), mode);
    c.fitness = tl.makespan;
    return tl;
}

double lower_bound(const TaskGraph& g, const Platform& p) {
    check_compatible(p, g);
    std::vector<double> longest(g.size(), 0.0);
    double best = 0.0;
    for (TaskId t : g.topo_order()) {
        double fastest = std::numeric_limits<double>::infinity();
        for (const auto& m : p.machines()) fastest = std::min(fastest, execution_time(p, g.task(t), m.id));
        double before = 0.0;
        for (TaskId q : g.parents(t)) before = std::max(before, longest[q.idx()]);
        longest[t.idx()] = before + fastest;
        best = std::max(best, longest[t.idx()]);
    }
    return best;
}

}  // namespace dagsched
