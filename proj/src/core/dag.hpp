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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dagsched {

/// Dense index wrapper. Values are declaration positions, so they are stable
/// and unique within the owning container.
template <class Tag>
struct Index {
    std::uint32_t value = 0;

    constexpr Index() = default;
    constexpr explicit Index(std::uint32_t v) : value(v) {}
    constexpr explicit Index(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
    constexpr explicit Index(int v) : value(static_cast<std::uint32_t>(v)) {}

    constexpr std::size_t idx() const { return value; }
    friend constexpr auto operator<=>(Index, Index) = default;
};

using TaskId = Index<struct TaskTag>;

struct TaskNode {
    TaskId id;        // assigned by build_graph
    std::string key;  // identifier used by documents and edges
    std::string name;
    double work = 0.0;
};

/// Edge as supplied to build_graph, endpoints named by task key.
struct EdgeSpec {
    std::string src;
    std::string dst;
    double bytes = 0.0;
};

struct DataEdge {
    TaskId src;
    TaskId dst;
    double bytes = 0.0;
};

/// Input for build_graph: key/name/work per task (ids are ignored and reassigned).
struct TaskSpec {
    std::string key;
    std::string name;
    double work = 0.0;
};

/// Immutable validated DAG. Parents and children are kept in edge declaration
/// order, and the transitive closure is precomputed for ancestor queries.
class TaskGraph {
public:
    std::size_t size() const { return tasks_.size(); }
    std::span<const TaskNode> tasks() const { return tasks_; }
    std::span<const DataEdge> edges() const { return edges_; }
    const TaskNode& task(TaskId t) const { return tasks_[t.idx()]; }

    std::span<const TaskId> parents(TaskId t) const { return parents_[t.idx()]; }
    std::span<const TaskId> children(TaskId t) const { return children_[t.idx()]; }
    /// Bytes on the edge p -> c; the edge must exist.
    double edge_bytes(TaskId p, TaskId c) const;
    /// Edge indices into edges() of the incoming edges of t, parallel to parents(t).
    std::span<const std::uint32_t> in_edges(TaskId t) const { return in_edges_[t.idx()]; }

    /// Tasks in a topological order; ties resolved by declaration order.
    std::span<const TaskId> topo_order() const { return topo_; }
    std::vector<TaskId> entries() const;
    std::vector<TaskId> exits() const;

    std::optional<TaskId> find(const std::string& key) const;
    /// Throws InvalidArgument when the key is missing.
    TaskId at(const std::string& key) const;

    bool reaches(TaskId a, TaskId b) const {
        return (closure_[a.idx()][b.idx() / 64] >> (b.idx() % 64)) & 1u;
    }

private:
    friend TaskGraph build_graph(std::vector<TaskSpec>, std::vector<EdgeSpec>);

    std::vector<TaskNode> tasks_;
    std::vector<DataEdge> edges_;
    std::vector<std::vector<TaskId>> parents_;
    std::vector<std::vector<TaskId>> children_;
    std::vector<std::vector<std::uint32_t>> in_edges_;
    std::vector<TaskId> topo_;
    std::vector<std::vector<std::uint64_t>> closure_;
    std::unordered_map<std::string, TaskId> by_key_;
};

/// Validates and builds a task graph. Throws Error with DuplicateTaskId,
/// DuplicateEdge, UnknownEdgeEndpoint, SelfLoop, CycleDetected (message lists
/// one cycle's task keys), or InvalidArgument (empty graph, negative work or bytes).
TaskGraph build_graph(std::vector<TaskSpec> tasks, std::vector<EdgeSpec> edges);

struct HeightMap {
    std::vector<std::uint32_t> values;

    std::uint32_t operator[](TaskId t) const { return values[t.idx()]; }
    std::size_t size() const { return values.size(); }
    friend bool operator==(const HeightMap&, const HeightMap&) = default;
};

HeightMap compute_heights(const TaskGraph& g);

/// Returns a new map with `selected` set to 0 and every other non-zero task
/// recomputed as 1 + max over parents. Throws NotReady unless h[selected] == 1.
HeightMap adjust_heights(const TaskGraph& g, const HeightMap& h, TaskId selected);

/// Tasks whose height is exactly 1, in declaration order.
std::vector<TaskId> ready_tasks(const TaskGraph& g, const HeightMap& h);

bool is_ancestor(const TaskGraph& g, TaskId a, TaskId b);

bool is_valid_order(const TaskGraph& g, std::span<const TaskId> order);

}  // namespace dagsched
