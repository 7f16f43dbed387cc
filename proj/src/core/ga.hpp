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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dag.hpp"
#include "evaluator.hpp"
#include "platform.hpp"

namespace dagsched {

/// Every stochastic choice in the GA draws from this one generator, in a
/// fixed call order.
using Rng = std::mt19937_64;

enum class CrossoverMode { OrderPreserving, TaskAligned, Mixed };

struct GaConfig {
    std::size_t pop_size = 100;
    std::size_t max_iters = 50;
    std::size_t stagnation_limit = 50;
    std::size_t pairs_per_generation = 0;  // 0 means pop_size / 4
    CrossoverMode crossover = CrossoverMode::Mixed;
    double mutation_rate = 0.2;
    std::size_t heuristic_seed_count = 1;
    std::uint64_t rng_seed = 1;
    unsigned eval_threads = 1;

    std::size_t effective_pairs() const {
        return pairs_per_generation ? pairs_per_generation : std::max<std::size_t>(1, pop_size / 4);
    }
};

/// Throws InvalidArgument when cfg breaks pop_size >= 2, pairs >= 1,
/// mutation_rate in [0, 1], heuristic_seed_count < pop_size, eval_threads >= 1.
void validate(const GaConfig& cfg);

struct Population {
    std::vector<Chromosome> members;  // sorted by fitness, ascending
    std::size_t generation = 0;
    Chromosome best_so_far;
};

struct RunStats {
    std::size_t iterations = 0;
    std::vector<double> best_per_generation;  // entry 0 is the initial population
    double wall_ms = 0.0;
};

struct RunResult {
    Chromosome best;
    Timeline timeline;
    RunStats stats;
    double seed_makespan = 0.0;  // load-balanced individual; NaN when not seeded
};

enum class Stage { Initial, Crossover, Mutation };
/// Sees every chromosome the GA produces, before it is evaluated.
using Observer = std::function<void(Stage, const Chromosome&)>;

Chromosome generate_individual(const TaskGraph& g, const Platform& p, const HeightMap& h, Rng& rng);

Chromosome load_balanced_individual(const TaskGraph& g, const Platform& p, const HeightMap& h);

/// Linear rank weights (best = N, worst = 1; ties share their mean rank).
/// Returns index pairs into members; the two indices of a pair differ.
std::vector<std::pair<std::size_t, std::size_t>> rank_select_pairs(
    std::span<const Chromosome> members, std::size_t n_pairs, Rng& rng);

/// Position-wise machine exchange over [point, n).
std::pair<Chromosome, Chromosome> crossover_order_preserving(const Chromosome& p1,
                                                             const Chromosome& p2,
                                                             std::size_t point);

/// Machine exchange by task identity for the tasks at p1's positions >= point.
std::pair<Chromosome, Chromosome> crossover_task_aligned(const Chromosome& p1,
                                                         const Chromosome& p2,
                                                         std::size_t point);

/// True if swapping positions i < j keeps every dependency: the task at i
/// has no descendant in (i, j] and the task at j has no ancestor in [i, j).
bool can_swap(const TaskGraph& g, const Chromosome& c, std::size_t i, std::size_t j);

/// Swaps the (task, machine) pairs at i and j if can_swap allows it.
bool swap_positions(const TaskGraph& g, Chromosome& c, std::size_t i, std::size_t j);

/// Draws position pairs until one can be swapped, up to n^2 draws. Returns
/// c unchanged (fitness kept) when the budget runs out.
Chromosome mutate(const TaskGraph& g, const Chromosome& c, Rng& rng);

/// Merge, stable sort (incumbents first at equal fitness), keep the best
/// pop_size. All chromosomes must carry fitness.
Population update_population(Population pop, std::vector<Chromosome> children, std::size_t pop_size);

/// Evaluates every chromosome in place, fanning out over `threads` workers.
void evaluate_all(const TaskGraph& g, const Platform& p, std::span<Chromosome> batch, CommMode mode,
                  unsigned threads);

RunResult run(const TaskGraph& g, const Platform& p, const GaConfig& cfg,
              CommMode mode = CommMode::IncludeTransfer, const Observer& observer = {});

}  // namespace dagsched
