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

// Shared instances for the test suites.

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dag.hpp"
#include "evaluator.hpp"
#include "platform.hpp"

namespace dagsched::testing {

// Execution times of tasks 1..10 at speed 1.
inline const std::vector<double> kReferenceWorks{21, 12, 18, 12, 9, 21, 15, 24, 11, 10};

// Ten-task reference DAG. Task k has key "k" and name "jobk"; byte volumes
// are arbitrary but fixed.
inline TaskGraph reference_dag(bool zero_bytes = false) {
    std::vector<TaskSpec> tasks;
    for (int k = 1; k <= 10; ++k) {
        tasks.push_back({std::to_string(k), "job" + std::to_string(k), kReferenceWorks[k - 1]});
    }
    const std::vector<std::pair<int, int>> links{{1, 2}, {1, 3}, {1, 4}, {3, 6}, {4, 8}, {2, 5},
                                                 {6, 5}, {8, 7}, {5, 9}, {7, 9}, {9, 10}};
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < links.size(); ++i) {
        edges.push_back({std::to_string(links[i].first), std::to_string(links[i].second),
                         zero_bytes ? 0.0 : 10.0 * static_cast<double>(i + 1)});
    }
    return build_graph(std::move(tasks), std::move(edges));
}

inline TaskId tid(const TaskGraph& g, int key) { return g.at(std::to_string(key)); }

inline std::vector<TaskId> order_of(const TaskGraph& g, const std::vector<int>& keys) {
    std::vector<TaskId> out;
    for (int k : keys) out.push_back(tid(g, k));
    return out;
}

inline std::vector<TaskId> order_of_keys(const TaskGraph& g, const std::vector<std::string>& keys) {
    std::vector<TaskId> out;
    for (const auto& k : keys) out.push_back(g.at(k));
    return out;
}

// Machines M1..Mn, keys "M1".., all speed 1 unless given.
inline Platform uniform_platform(std::size_t n, double bandwidth = 10.0, double latency = 0.0,
                                 std::vector<double> speeds = {}) {
    std::vector<MachineSpec> ms;
    for (std::size_t i = 0; i < n; ++i) {
        ms.push_back({"M" + std::to_string(i + 1), "Machine" + std::to_string(i + 1),
                      speeds.empty() ? 1.0 : speeds[i]});
    }
    return build_platform(std::move(ms), Link{bandwidth, latency}, {});
}

inline std::vector<MachineId> machines_of(const std::vector<int>& ms) {
    std::vector<MachineId> out;
    for (int m : ms) out.emplace_back(static_cast<std::uint32_t>(m - 1));
    return out;
}

inline Chromosome chromosome(const TaskGraph& g, const std::vector<int>& tasks, const std::vector<int>& ms) {
    return Chromosome{order_of(g, tasks), machines_of(ms), std::nullopt};
}

// Two parents used by the crossover and mutation examples. The second
// order places 9 before 5 and is only ever fed to the crossovers.
inline Chromosome sample_parent1(const TaskGraph& g) {
    return chromosome(g, {1, 3, 6, 2, 5, 4, 8, 7, 9, 10}, {1, 2, 4, 7, 3, 1, 5, 6, 3, 4});
}
inline Chromosome sample_parent2(const TaskGraph& g) {
    return chromosome(g, {1, 2, 4, 8, 3, 6, 7, 9, 5, 10}, {4, 3, 6, 7, 1, 2, 4, 3, 5, 2});
}

// Random DAG: edges only from lower to higher index, each with probability p.
inline TaskGraph random_dag(std::mt19937_64& rng, std::size_t n, double p, double max_bytes = 20.0) {
    std::uniform_real_distribution<double> work(1.0, 20.0), bytes(0.0, max_bytes), coin(0.0, 1.0);
    std::vector<TaskSpec> tasks;
    for (std::size_t i = 0; i < n; ++i) tasks.push_back({"t" + std::to_string(i), "task" + std::to_string(i), work(rng)});
    std::vector<EdgeSpec> edges;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (coin(rng) < p) edges.push_back({"t" + std::to_string(a), "t" + std::to_string(b), bytes(rng)});
        }
    }
    // Shuffle declaration order so indices are not already topological.
    std::shuffle(tasks.begin(), tasks.end(), rng);
    return build_graph(std::move(tasks), std::move(edges));
}

inline Platform random_platform(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> speed(1.0, 3.0), bw(2.0, 20.0), lat(0.0, 1.0);
    std::vector<MachineSpec> ms;
    for (std::size_t i = 0; i < m; ++i) ms.push_back({"m" + std::to_string(i), "Machine" + std::to_string(i), speed(rng)});
    std::vector<LinkSpec> links;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (a != b) links.push_back({"m" + std::to_string(a), "m" + std::to_string(b), Link{bw(rng), lat(rng)}});
        }
    }
    return build_platform(std::move(ms), Link{10.0, 0.0}, std::move(links));
}

}  // namespace dagsched::testing
