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

#include "ga.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "error.hpp"

namespace dagsched {

namespace {

std::size_t draw_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

double draw_unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

bool by_fitness(const Chromosome& a, const Chromosome& b) { return *a.fitness < *b.fitness; }

// Index of the first cumulative weight exceeding x, skipping `excluded`.
std::size_t pick_weighted(const std::vector<double>& weights, double x, std::size_t excluded) {
    std::size_t last = excluded;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (k == excluded) continue;
        last = k;
        if (x < weights[k]) return k;
        x -= weights[k];
    }
    return last;  // rounding at the upper end
}

}  // namespace

void validate(const GaConfig& cfg) {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
    if (cfg.pop_size < 2) fail("population size must be at least 2");
    if (cfg.effective_pairs() < 1) fail("pairs per generation must be at least 1");
    if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) fail("mutation rate must lie in [0, 1]");
    if (cfg.heuristic_seed_count >= cfg.pop_size) fail("heuristic seed count must be below population size");
    if (cfg.eval_threads < 1) fail("evaluation threads must be at least 1");
}

Chromosome generate_individual(const TaskGraph& g, const Platform& p, const HeightMap& h, Rng& rng) {
    Chromosome c;
    c.order.reserve(g.size());
    c.machines.reserve(g.size());
    HeightMap working = h;
    for (auto ready = ready_tasks(g, working); !ready.empty(); ready = ready_tasks(g, working)) {
        const TaskId t = ready[draw_index(rng, ready.size())];
        const MachineId m{draw_index(rng, p.size())};
        c.order.push_back(t);
        c.machines.push_back(m);
        working = adjust_heights(g, working, t);
    }
    return c;
}

Chromosome load_balanced_individual(const TaskGraph& g, const Platform& p, const HeightMap& h) {
    Chromosome c;
    std::vector<double> load(p.size(), 0.0);
    HeightMap working = h;
    for (auto ready = ready_tasks(g, working); !ready.empty(); ready = ready_tasks(g, working)) {
        const TaskId t = ready.front();
        std::size_t best = 0;
        for (std::size_t m = 1; m < load.size(); ++m) {
            if (load[m] < load[best]) best = m;
        }
        load[best] += execution_time(p, g.task(t), MachineId{best});
        c.order.push_back(t);
        c.machines.emplace_back(best);
        working = adjust_heights(g, working, t);
    }
    return c;
}

std::vector<std::pair<std::size_t, std::size_t>> rank_select_pairs(
    std::span<const Chromosome> members, std::size_t n_pairs, Rng& rng) {
    const std::size_t n = members.size();
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "selection needs at least two members");

    std::vector<std::size_t> sorted(n);
    std::iota(sorted.begin(), sorted.end(), 0);
    std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        return *members[a].fitness < *members[b].fitness;
    });

    // Sorted position k holds rank n - k; a run of equal fitness shares the mean.
    std::vector<double> weight(n);
    for (std::size_t k = 0; k < n;) {
        std::size_t end = k + 1;
        while (end < n && *members[sorted[end]].fitness == *members[sorted[k]].fitness) ++end;
        const double mean_rank = static_cast<double>(n - k) - static_cast<double>(end - k - 1) / 2.0;
        for (std::size_t r = k; r < end; ++r) weight[sorted[r]] = mean_rank;
        k = end;
    }
    const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const std::size_t first = pick_weighted(weight, draw_unit(rng) * total, n);
        const std::size_t second = pick_weighted(weight, draw_unit(rng) * (total - weight[first]), first);
        pairs.emplace_back(first, second);
    }
    return pairs;
}

std::pair<Chromosome, Chromosome> crossover_order_preserving(const Chromosome& p1,
                                                             const Chromosome& p2,
                                                             std::size_t point) {
    Chromosome c1 = p1;
    Chromosome c2 = p2;
    c1.fitness.reset();
    c2.fitness.reset();
    for (std::size_t i = point; i < p1.size(); ++i) {
        c1.machines[i] = p2.machines[i];
        c2.machines[i] = p1.machines[i];
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> crossover_task_aligned(const Chromosome& p1,
                                                         const Chromosome& p2,
                                                         std::size_t point) {
    const std::size_t n = p1.size();
    std::vector<std::size_t> pos1(n), pos2(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos1[p1.order[i].idx()] = i;
        pos2[p2.order[i].idx()] = i;
    }
    Chromosome c1 = p1;
    Chromosome c2 = p2;
    c1.fitness.reset();
    c2.fitness.reset();
    for (std::size_t i = point; i < n; ++i) {
        const TaskId t = p1.order[i];
        c1.machines[i] = p2.machines[pos2[t.idx()]];
        c2.machines[pos2[t.idx()]] = p1.machines[pos1[t.idx()]];
    }
    return {std::move(c1), std::move(c2)};
}

bool can_swap(const TaskGraph& g, const Chromosome& c, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (i == j) return false;
    const TaskId first = c.order[i];
    const TaskId last = c.order[j];
    for (std::size_t k = i + 1; k <= j; ++k) {
        if (g.reaches(first, c.order[k])) return false;
    }
    for (std::size_t k = i; k < j; ++k) {
        if (g.reaches(c.order[k], last)) return false;
    }
    return true;
}

bool swap_positions(const TaskGraph& g, Chromosome& c, std::size_t i, std::size_t j) {
    if (!can_swap(g, c, i, j)) return false;
    std::swap(c.order[i], c.order[j]);
    std::swap(c.machines[i], c.machines[j]);
    c.fitness.reset();
    return true;
}

Chromosome mutate(const TaskGraph& g, const Chromosome& c, Rng& rng) {
    const std::size_t n = c.size();
    Chromosome out = c;
    if (n < 2) return out;
    const std::size_t budget = n * n;
    for (std::size_t draw = 0; draw < budget; ++draw) {
        std::size_t a = draw_index(rng, n);
        std::size_t b = draw_index(rng, n - 1);
        if (b >= a) ++b;
        if (swap_positions(g, out, std::min(a, b), std::max(a, b))) return out;
    }
    return out;
}

Population update_population(Population pop, std::vector<Chromosome> children, std::size_t pop_size) {
    auto& members = pop.members;
    members.reserve(members.size() + children.size());
    for (auto& c : children) members.push_back(std::move(c));
    std::stable_sort(members.begin(), members.end(), by_fitness);
    if (members.size() > pop_size) members.resize(pop_size);
    if (!members.empty() &&
        (!pop.best_so_far.fitness || *members.front().fitness < *pop.best_so_far.fitness)) {
        pop.best_so_far = members.front();
    }
    ++pop.generation;
    return pop;
}

void evaluate_all(const TaskGraph& g, const Platform& p, std::span<Chromosome> batch, CommMode mode,
                  unsigned threads) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), batch.size());
    if (workers <= 1) {
        for (auto& c : batch) evaluate(g, p, c, mode);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < batch.size(); i += workers) evaluate(g, p, batch[i], mode);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

RunResult run(const TaskGraph& g, const Platform& p, const GaConfig& cfg, CommMode mode,
              const Observer& observer) {
    validate(cfg);
    check_compatible(p, g);
    const auto started = std::chrono::steady_clock::now();
    auto notify = [&](Stage s, const Chromosome& c) {
        if (observer) observer(s, c);
    };

    Rng rng(cfg.rng_seed);
    const HeightMap heights = compute_heights(g);

    Population pop;
    pop.members.reserve(cfg.pop_size + 2 * cfg.effective_pairs());
    if (cfg.heuristic_seed_count > 0) {
        const Chromosome seed = load_balanced_individual(g, p, heights);
        for (std::size_t k = 0; k < cfg.heuristic_seed_count; ++k) pop.members.push_back(seed);
    }
    while (pop.members.size() < cfg.pop_size) pop.members.push_back(generate_individual(g, p, heights, rng));
    for (const auto& c : pop.members) notify(Stage::Initial, c);
    evaluate_all(g, p, pop.members, mode, cfg.eval_threads);

    RunResult result;
    result.seed_makespan = cfg.heuristic_seed_count > 0 ? *pop.members.front().fitness
                                                        : std::numeric_limits<double>::quiet_NaN();
    std::stable_sort(pop.members.begin(), pop.members.end(), by_fitness);
    pop.best_so_far = pop.members.front();
    result.stats.best_per_generation.push_back(*pop.best_so_far.fitness);

    const std::size_t n = g.size();
    std::size_t stagnant = 0;
    for (std::size_t iter = 0; iter < cfg.max_iters && stagnant < cfg.stagnation_limit; ++iter) {
        const auto pairs = rank_select_pairs(pop.members, cfg.effective_pairs(), rng);
        std::vector<Chromosome> children;
        children.reserve(2 * pairs.size());
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const Chromosome& a = pop.members[pairs[k].first];
            const Chromosome& b = pop.members[pairs[k].second];
            std::pair<Chromosome, Chromosome> kids{a, b};
            if (n >= 2) {
                const std::size_t point = 1 + draw_index(rng, n - 1);
                const bool aligned = cfg.crossover == CrossoverMode::TaskAligned ||
                                     (cfg.crossover == CrossoverMode::Mixed && k % 2 == 1);
                kids = aligned ? crossover_task_aligned(a, b, point)
                               : crossover_order_preserving(a, b, point);
            }
            for (Chromosome* child : {&kids.first, &kids.second}) {
                child->fitness.reset();
                notify(Stage::Crossover, *child);
                if (draw_unit(rng) < cfg.mutation_rate) {
                    *child = mutate(g, *child, rng);
                    notify(Stage::Mutation, *child);
                }
                children.push_back(std::move(*child));
            }
        }
        evaluate_all(g, p, children, mode, cfg.eval_threads);

        const double before = *pop.best_so_far.fitness;
        pop = update_population(std::move(pop), std::move(children), cfg.pop_size);
        result.stats.best_per_generation.push_back(*pop.best_so_far.fitness);
        stagnant = *pop.best_so_far.fitness < before ? 0 : stagnant + 1;
        ++result.stats.iterations;
    }

    result.best = pop.best_so_far;
    result.timeline = evaluate(g, p, result.best, mode);
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace dagsched
