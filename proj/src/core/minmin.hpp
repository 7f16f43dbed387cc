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

#include <utility>

#include "evaluator.hpp"

namespace dagsched {

/// Greedy min-min over the ready set: commit the (task, machine) pair with the
/// earliest completion time, ties by task then machine declaration order.
/// The returned timeline equals evaluate() of the returned chromosome.
std::pair<Chromosome, Timeline> min_min_schedule(const TaskGraph& g, const Platform& p,
                                                 CommMode mode = CommMode::IncludeTransfer);

}  // namespace dagsched
