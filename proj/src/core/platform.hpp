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

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dag.hpp"

namespace dagsched {

using MachineId = Index<struct MachineTag>;

struct Machine {
    MachineId id;
    std::string key;
    std::string name;
    double speed = 1.0;  // work units per time unit
};

struct MachineSpec {
    std::string key;
    std::string name;
    double speed = 1.0;
};

struct Link {
    double bandwidth = 1.0;  // data volume per time unit
    double latency = 0.0;
};

struct LinkSpec {
    std::string src;
    std::string dst;
    Link link;
};

/// Machines plus a directed link table. Unlisted pairs use the default link
/// when one is configured. An optional ETC matrix (rows = tasks in graph
/// declaration order, columns = machines) replaces the work/speed model.
class Platform {
public:
    std::size_t size() const { return machines_.size(); }
    std::span<const Machine> machines() const { return machines_; }
    const Machine& machine(MachineId m) const { return machines_[m.idx()]; }
    std::optional<MachineId> find(const std::string& key) const;

    const std::optional<Link>& default_link() const { return default_link_; }
    /// Explicitly listed links, in declaration order.
    std::span<const LinkSpec> links() const { return link_specs_; }
    const std::optional<std::vector<std::vector<double>>>& etc() const { return etc_; }

    /// Link used between distinct machines a and b, or nullopt if none applies.
    std::optional<Link> link(MachineId a, MachineId b) const;

    void check_machine(MachineId m) const;

private:
    friend Platform build_platform(std::vector<MachineSpec>, std::optional<Link>,
                                   std::vector<LinkSpec>,
                                   std::optional<std::vector<std::vector<double>>>);

    std::vector<Machine> machines_;
    std::optional<Link> default_link_;
    std::vector<LinkSpec> link_specs_;
    std::vector<std::optional<Link>> link_table_;  // size() x size(), row-major
    std::optional<std::vector<std::vector<double>>> etc_;
    std::unordered_map<std::string, MachineId> by_key_;
};

/// Throws InvalidArgument (no machines, negative latency, ragged or negative ETC),
/// DuplicateMachineId, UnknownMachine (link endpoint), NonPositiveSpeed or
/// NonPositiveBandwidth.
Platform build_platform(std::vector<MachineSpec> machines, std::optional<Link> default_link,
                        std::vector<LinkSpec> links,
                        std::optional<std::vector<std::vector<double>>> etc = std::nullopt);

/// Throws SchemaError when the platform's ETC matrix does not cover g.
void check_compatible(const Platform& p, const TaskGraph& g);

double execution_time(const Platform& p, const TaskNode& t, MachineId m);

/// 0 for identical machines, otherwise latency + bytes / bandwidth.
/// Throws UnknownMachine or NoLinkDefined.
double transfer_time(const Platform& p, double bytes, MachineId a, MachineId b);

}  // namespace dagsched
