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

#include "platform.hpp"

#include <utility>

#include "error.hpp"

namespace dagsched {

std::optional<MachineId> Platform::find(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::optional<Link> Platform::link(MachineId a, MachineId b) const {
    return link_table_[a.idx() * machines_.size() + b.idx()];
}

void Platform::check_machine(MachineId m) const {
    if (m.idx() >= machines_.size()) {
        throw Error(ErrorCode::UnknownMachine, "unknown machine index " + std::to_string(m.value));
    }
}

Platform build_platform(std::vector<MachineSpec> machines, std::optional<Link> default_link,
                        std::vector<LinkSpec> links,
                        std::optional<std::vector<std::vector<double>>> etc) {
    if (machines.empty()) throw Error(ErrorCode::InvalidArgument, "platform has no machines");

    Platform p;
    for (std::size_t i = 0; i < machines.size(); ++i) {
        auto& spec = machines[i];
        if (!(spec.speed > 0.0)) {
            throw Error(ErrorCode::NonPositiveSpeed,
                        "machine '" + spec.key + "' has non-positive speed");
        }
        if (!p.by_key_.emplace(spec.key, MachineId{i}).second) {
            throw Error(ErrorCode::DuplicateMachineId, "duplicate machine id '" + spec.key + "'");
        }
        p.machines_.push_back(Machine{MachineId{i}, std::move(spec.key), std::move(spec.name), spec.speed});
    }

    auto check_link = [](const Link& l, const std::string& what) {
        if (!(l.bandwidth > 0.0)) {
            throw Error(ErrorCode::NonPositiveBandwidth, what + " has non-positive bandwidth");
        }
        if (!(l.latency >= 0.0)) throw Error(ErrorCode::InvalidArgument, what + " has negative latency");
    };
    if (default_link) check_link(*default_link, "default link");

    const std::size_t m = p.machines_.size();
    p.link_table_.assign(m * m, default_link);
    for (const auto& spec : links) {
        auto a = p.find(spec.src);
        auto b = p.find(spec.dst);
        if (!a || !b) {
            throw Error(ErrorCode::UnknownMachine,
                        "link " + spec.src + " -> " + spec.dst + " names unknown machine '" +
                            (a ? spec.dst : spec.src) + "'");
        }
        check_link(spec.link, "link " + spec.src + " -> " + spec.dst);
        p.link_table_[a->idx() * m + b->idx()] = spec.link;
    }
    p.default_link_ = default_link;
    p.link_specs_ = std::move(links);

    if (etc) {
        for (const auto& row : *etc) {
            if (row.size() != m) {
                throw Error(ErrorCode::InvalidArgument, "etc row length differs from machine count");
            }
            for (double v : row) {
                if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, "etc entry is negative");
            }
        }
    }
    p.etc_ = std::move(etc);
    return p;
}

void check_compatible(const Platform& p, const TaskGraph& g) {
    if (p.etc() && p.etc()->size() != g.size()) {
        throw Error(ErrorCode::SchemaError, "etc matrix has " + std::to_string(p.etc()->size()) +
                                                " rows but the graph has " +
                                                std::to_string(g.size()) + " tasks");
    }
}

double execution_time(const Platform& p, const TaskNode& t, MachineId m) {
    p.check_machine(m);
    if (const auto& etc = p.etc()) return (*etc)[t.id.idx()][m.idx()];
    return t.work / p.machine(m).speed;
}

double transfer_time(const Platform& p, double bytes, MachineId a, MachineId b) {
    p.check_machine(a);
    p.check_machine(b);
    if (a == b) return 0.0;
    auto l = p.link(a, b);
    if (!l) {
        throw Error(ErrorCode::NoLinkDefined, "no link between '" + p.machine(a).key + "' and '" +
                                                  p.machine(b).key + "'");
    }
    return l->latency + bytes / l->bandwidth;
}

}  // namespace dagsched
