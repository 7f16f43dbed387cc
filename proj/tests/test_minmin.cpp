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

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "minmin.hpp"
#include "oracles.hpp"

using namespace dagsched;
using namespace dagsched::testing;

namespace {

std::vector<std::size_t> raw_order(const Chromosome& c) {
    std::vector<std::size_t> out;
    for (auto t : c.order) out.push_back(t.idx());
    return out;
}
std::vector<std::size_t> raw_machines(const Chromosome& c) {
    std::vector<std::size_t> out;
    for (auto m : c.machines) out.push_back(m.idx());
    return out;
}

}  // namespace

TEST_CASE("single task goes to the faster machine") {
    const TaskGraph g = build_graph({{"t", "t", 8}}, {});
    const auto [c, tl] = min_min_schedule(g, uniform_platform(2, 10.0, 0.0, {1, 2}));
    CHECK(c.machines == machines_of({2}));
    CHECK(tl.makespan == 4.0);
}

TEST_CASE("two equal independent tasks split across identical machines") {
    const TaskGraph g = build_graph({{"a", "a", 6}, {"b", "b", 6}}, {});
    const auto [c, tl] = min_min_schedule(g, uniform_platform(2));
    CHECK(c.machines == machines_of({1, 2}));
    CHECK(tl.makespan == 6.0);
}

TEST_CASE("diamond on asymmetric machines matches the restated rule") {
    const TaskGraph g = build_graph({{"a", "a", 4}, {"b", "b", 6}, {"c", "c", 3}, {"d", "d", 5}},
                                    {{"a", "b", 8}, {"a", "c", 2}, {"b", "d", 4}, {"c", "d", 6}});
    const Platform p = uniform_platform(2, 4.0, 0.0, {1.0, 2.5});
    for (bool with : {true, false}) {
        const auto [c, tl] = min_min_schedule(g, p, with ? CommMode::IncludeTransfer : CommMode::IgnoreTransfer);
        const auto [order, machines] = oracle::min_min(g, p, with);
        CHECK(raw_order(c) == order);
        CHECK(raw_machines(c) == machines);
    }
}

TEST_CASE("property: min-min agrees with the oracle and with evaluate") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const TaskGraph g = random_dag(rng, 1 + trial % 15, 0.3);
        const Platform p = random_platform(rng, 1 + trial % 4);
        const bool with = trial % 2 == 0;
        const CommMode mode = with ? CommMode::IncludeTransfer : CommMode::IgnoreTransfer;
        const auto [c, tl] = min_min_schedule(g, p, mode);
        CHECK(is_valid_order(g, c.order));
        CHECK(tl == evaluate(g, p, c, mode));
        REQUIRE(c.fitness);
        CHECK(*c.fitness == tl.makespan);
        CHECK(tl.makespan >= lower_bound(g, p) - 1e-9);
        const auto [order, machines] = oracle::min_min(g, p, with);
        CHECK(raw_order(c) == order);
        CHECK(raw_machines(c) == machines);
        CHECK(min_min_schedule(g, p, mode).first == c);
    }
}
