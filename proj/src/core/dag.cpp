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

#include "dag.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include "error.hpp"

namespace dagsched {

namespace {

// Walks parent links inside the unsorted remainder of Kahn's algorithm.
// Every node left over has at least one left-over parent, so the walk must
// revisit a node; the revisited suffix is a cycle.
std::vector<TaskId> find_cycle(const std::vector<std::vector<TaskId>>& parents,
                               const std::vector<std::size_t>& indegree) {
    std::size_t start = 0;
    while (indegree[start] == 0) ++start;

    std::vector<int> seen_at(parents.size(), -1);
    std::vector<TaskId> walk;
    TaskId cur{start};
    while (seen_at[cur.idx()] < 0) {
        seen_at[cur.idx()] = static_cast<int>(walk.size());
        walk.push_back(cur);
        for (TaskId p : parents[cur.idx()]) {
            if (indegree[p.idx()] > 0) {
                cur = p;
                break;
            }
        }
    }
    std::vector<TaskId> cycle(walk.begin() + seen_at[cur.idx()], walk.end());
    // Collected child-to-parent; report in edge direction.
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

double TaskGraph::edge_bytes(TaskId p, TaskId c) const {
    const auto& ps = parents_[c.idx()];
    for (std::size_t k = 0; k < ps.size(); ++k) {
        if (ps[k] == p) return edges_[in_edges_[c.idx()][k]].bytes;
    }
    throw Error(ErrorCode::InvalidArgument,
                "no edge " + tasks_[p.idx()].key + " -> " + tasks_[c.idx()].key);
}

std::vector<TaskId> TaskGraph::entries() const {
    std::vector<TaskId> out;
    for (const auto& t : tasks_) {
        if (parents_[t.id.idx()].empty()) out.push_back(t.id);
    }
    return out;
}

std::vector<TaskId> TaskGraph::exits() const {
    std::vector<TaskId> out;
    for (const auto& t : tasks_) {
        if (children_[t.id.idx()].empty()) out.push_back(t.id);
    }
    return out;
}

std::optional<TaskId> TaskGraph::find(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

TaskId TaskGraph::at(const std::string& key) const {
    if (auto t = find(key)) return *t;
    throw Error(ErrorCode::InvalidArgument, "unknown task '" + key + "'");
}

TaskGraph build_graph(std::vector<TaskSpec> tasks, std::vector<EdgeSpec> edges) {
    if (tasks.empty()) throw Error(ErrorCode::InvalidArgument, "task graph has no tasks");

    TaskGraph g;
    const std::size_t n = tasks.size();
    g.tasks_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& spec = tasks[i];
        if (!(spec.work >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "task '" + spec.key + "' has negative work");
        }
        if (!g.by_key_.emplace(spec.key, TaskId{i}).second) {
            throw Error(ErrorCode::DuplicateTaskId, "duplicate task id '" + spec.key + "'");
        }
        g.tasks_.push_back(TaskNode{TaskId{i}, std::move(spec.key), std::move(spec.name), spec.work});
    }

    g.parents_.resize(n);
    g.children_.resize(n);
    g.in_edges_.resize(n);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& e : edges) {
        auto src = g.find(e.src);
        auto dst = g.find(e.dst);
        if (!src || !dst) {
            throw Error(ErrorCode::UnknownEdgeEndpoint,
                        "edge " + e.src + " -> " + e.dst + " names unknown task '" +
                            (src ? e.dst : e.src) + "'");
        }
        if (*src == *dst) throw Error(ErrorCode::SelfLoop, "self loop on task '" + e.src + "'");
        if (!(e.bytes >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "edge " + e.src + " -> " + e.dst + " has negative bytes");
        }
        if (!seen.emplace(src->value, dst->value).second) {
            throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + e.src + " -> " + e.dst);
        }
        g.in_edges_[dst->idx()].push_back(static_cast<std::uint32_t>(g.edges_.size()));
        g.edges_.push_back(DataEdge{*src, *dst, e.bytes});
        g.parents_[dst->idx()].push_back(*src);
        g.children_[src->idx()].push_back(*dst);
    }

    // Kahn with a min-heap on declaration index.
    std::vector<std::size_t> indegree(n);
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        indegree[i] = g.parents_[i].size();
        if (indegree[i] == 0) ready.push(static_cast<std::uint32_t>(i));
    }
    while (!ready.empty()) {
        TaskId t{ready.top()};
        ready.pop();
        g.topo_.push_back(t);
        for (TaskId c : g.children_[t.idx()]) {
            if (--indegree[c.idx()] == 0) ready.push(c.value);
        }
    }
    if (g.topo_.size() != n) {
        std::string msg = "cycle detected:";
        auto cycle = find_cycle(g.parents_, indegree);
        for (TaskId t : cycle) msg += " " + g.tasks_[t.idx()].key + " ->";
        msg += " " + g.tasks_[cycle.front().idx()].key;
        throw Error(ErrorCode::CycleDetected, msg);
    }

    const std::size_t words = (n + 63) / 64;
    g.closure_.assign(n, std::vector<std::uint64_t>(words, 0));
    for (auto it = g.topo_.rbegin(); it != g.topo_.rend(); ++it) {
        auto& row = g.closure_[it->idx()];
        for (TaskId c : g.children_[it->idx()]) {
            row[c.idx() / 64] |= std::uint64_t{1} << (c.idx() % 64);
            const auto& sub = g.closure_[c.idx()];
            for (std::size_t w = 0; w < words; ++w) row[w] |= sub[w];
        }
    }
    return g;
}

HeightMap compute_heights(const TaskGraph& g) {
    HeightMap h{std::vector<std::uint32_t>(g.size(), 0)};
    for (TaskId t : g.topo_order()) {
        std::uint32_t best = 0;
        for (TaskId p : g.parents(t)) best = std::max(best, h.values[p.idx()]);
        h.values[t.idx()] = best + 1;
    }
    return h;
}

HeightMap adjust_heights(const TaskGraph& g, const HeightMap& h, TaskId selected) {
    if (h[selected] != 1) {
        throw Error(ErrorCode::NotReady, "task '" + g.task(selected).key + "' has height " +
                                             std::to_string(h[selected]) + ", expected 1");
    }
    HeightMap out = h;
    out.values[selected.idx()] = 0;
    for (TaskId t : g.topo_order()) {
        if (out.values[t.idx()] == 0) continue;
        std::uint32_t best = 0;
        for (TaskId p : g.parents(t)) best = std::max(best, out.values[p.idx()]);
        out.values[t.idx()] = best + 1;
    }
    return out;
}

std::vector<TaskId> ready_tasks(const TaskGraph& g, const HeightMap& h) {
    std::vector<TaskId> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (h.values[i] == 1) out.emplace_back(i);
    }
    return out;
}

bool is_ancestor(const TaskGraph& g, TaskId a, TaskId b) { return g.reaches(a, b); }

bool is_valid_order(const TaskGraph& g, std::span<const TaskId> order) {
    if (order.size() != g.size()) return false;
    std::vector<char> placed(g.size(), 0);
    for (TaskId t : order) {
        if (t.idx() >= g.size() || placed[t.idx()]) return false;
        for (TaskId p : g.parents(t)) {
            if (!placed[p.idx()]) return false;
        }
        placed[t.idx()] = 1;
    }
    return true;
}

}  // namespace dagsched
