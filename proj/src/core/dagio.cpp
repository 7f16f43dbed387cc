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

#include "dagio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace dagsched {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SchemaError, where + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::SyntaxError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

void expect_object(const json& j, const std::string& where, std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional) {
    if (!j.is_object()) schema_error(where, "expected an object");
    for (auto key : required) {
        if (!j.contains(key)) schema_error(where, "missing field '" + std::string(key) + "'");
    }
    for (const auto& [key, value] : j.items()) {
        const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                           std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) schema_error(where, "unexpected field '" + key + "'");
    }
}

std::string get_id(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    schema_error(where, "id must be a string or an integer");
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) schema_error(where, "expected a string");
    return j.get<std::string>();
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) schema_error(where, "expected a number");
    return j.get<double>();
}

const json& get_array(const json& j, std::string_view key, const std::string& where) {
    const json& a = j.at(key);
    if (!a.is_array()) schema_error(where, "'" + std::string(key) + "' must be an array");
    return a;
}

Link parse_link(const json& j, const std::string& where, bool with_endpoints) {
    if (with_endpoints) {
        expect_object(j, where, {"src", "dst", "bandwidth"}, {"latency"});
    } else {
        expect_object(j, where, {"bandwidth"}, {"latency"});
    }
    Link l;
    l.bandwidth = get_number(j.at("bandwidth"), where + ".bandwidth");
    if (j.contains("latency")) l.latency = get_number(j.at("latency"), where + ".latency");
    return l;
}

}  // namespace

TaskGraph parse_dag(std::string_view text) {
    const json doc = parse_json(text);
    expect_object(doc, "document", {"tasks"}, {"edges"});

    const json& tasks = get_array(doc, "tasks", "document");
    if (tasks.empty()) schema_error("tasks", "at least one task is required");
    std::vector<TaskSpec> specs;
    specs.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const std::string where = "tasks[" + std::to_string(i) + "]";
        const json& t = tasks[i];
        expect_object(t, where, {"id", "work"}, {"name"});
        TaskSpec s;
        s.key = get_id(t.at("id"), where + ".id");
        s.name = t.contains("name") ? get_string(t.at("name"), where + ".name") : s.key;
        s.work = get_number(t.at("work"), where + ".work");
        specs.push_back(std::move(s));
    }

    std::vector<EdgeSpec> edges;
    if (doc.contains("edges")) {
        const json& arr = get_array(doc, "edges", "document");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "edges[" + std::to_string(i) + "]";
            const json& e = arr[i];
            expect_object(e, where, {"src", "dst"}, {"bytes"});
            EdgeSpec s;
            s.src = get_id(e.at("src"), where + ".src");
            s.dst = get_id(e.at("dst"), where + ".dst");
            if (e.contains("bytes")) s.bytes = get_number(e.at("bytes"), where + ".bytes");
            edges.push_back(std::move(s));
        }
    }
    return build_graph(std::move(specs), std::move(edges));
}

Platform parse_platform(std::string_view text) {
    const json doc = parse_json(text);
    expect_object(doc, "document", {"machines"}, {"default_link", "links", "etc"});

    const json& machines = get_array(doc, "machines", "document");
    if (machines.empty()) schema_error("machines", "at least one machine is required");
    std::vector<MachineSpec> specs;
    for (std::size_t i = 0; i < machines.size(); ++i) {
        const std::string where = "machines[" + std::to_string(i) + "]";
        const json& m = machines[i];
        expect_object(m, where, {"id", "speed"}, {"name"});
        MachineSpec s;
        s.key = get_id(m.at("id"), where + ".id");
        s.name = m.contains("name") ? get_string(m.at("name"), where + ".name") : s.key;
        s.speed = get_number(m.at("speed"), where + ".speed");
        specs.push_back(std::move(s));
    }

    std::optional<Link> default_link;
    if (doc.contains("default_link")) default_link = parse_link(doc.at("default_link"), "default_link", false);

    std::vector<LinkSpec> links;
    if (doc.contains("links")) {
        const json& arr = get_array(doc, "links", "document");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "links[" + std::to_string(i) + "]";
            LinkSpec s;
            s.link = parse_link(arr[i], where, true);
            s.src = get_id(arr[i].at("src"), where + ".src");
            s.dst = get_id(arr[i].at("dst"), where + ".dst");
            links.push_back(std::move(s));
        }
    }

    std::optional<std::vector<std::vector<double>>> etc;
    if (doc.contains("etc")) {
        const json& rows = get_array(doc, "etc", "document");
        etc.emplace();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string where = "etc[" + std::to_string(i) + "]";
            if (!rows[i].is_array()) schema_error(where, "expected an array");
            std::vector<double> row;
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                row.push_back(get_number(rows[i][k], where + "[" + std::to_string(k) + "]"));
            }
            etc->push_back(std::move(row));
        }
    }
    return build_platform(std::move(specs), default_link, std::move(links), std::move(etc));
}

std::string serialize_dag(const TaskGraph& g) {
    json doc;
    doc["tasks"] = json::array();
    for (const auto& t : g.tasks()) {
        doc["tasks"].push_back({{"id", t.key}, {"name", t.name}, {"work", t.work}});
    }
    doc["edges"] = json::array();
    for (const auto& e : g.edges()) {
        doc["edges"].push_back({{"src", g.task(e.src).key}, {"dst", g.task(e.dst).key}, {"bytes", e.bytes}});
    }
    return doc.dump(2) + "\n";
}

std::string serialize_platform(const Platform& p) {
    json doc;
    doc["machines"] = json::array();
    for (const auto& m : p.machines()) {
        doc["machines"].push_back({{"id", m.key}, {"name", m.name}, {"speed", m.speed}});
    }
    if (const auto& d = p.default_link()) {
        doc["default_link"] = {{"bandwidth", d->bandwidth}, {"latency", d->latency}};
    }
    doc["links"] = json::array();
    for (const auto& l : p.links()) {
        doc["links"].push_back(
            {{"src", l.src}, {"dst", l.dst}, {"bandwidth", l.link.bandwidth}, {"latency", l.link.latency}});
    }
    if (const auto& etc = p.etc()) doc["etc"] = *etc;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
}

namespace {

template <class T, class Parse>
T load_with_path(const std::filesystem::path& path, Parse parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace

TaskGraph load_dag(const std::filesystem::path& path) {
    return load_with_path<TaskGraph>(path, [](std::string_view t) { return parse_dag(t); });
}

Platform load_platform(const std::filesystem::path& path) {
    return load_with_path<Platform>(path, [](std::string_view t) { return parse_platform(t); });
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

void write_schedule_log(std::ostream& out, const TaskGraph& g, const Platform& p, const Chromosome& c,
                        const Timeline& tl) {
    std::vector<std::size_t> positions(c.size());
    std::iota(positions.begin(), positions.end(), 0);
    std::stable_sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
        return tl[c.order[a]].start < tl[c.order[b]].start;
    });
    for (std::size_t pos : positions) {
        const TaskId t = c.order[pos];
        out << "Schedule " << g.task(t).name << " on " << p.machine(tl[t].machine).name << '\n';
    }
    out << "Simulation Time: " << format_fixed(tl.makespan, 6) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed to write schedule log");
}

void write_bench_csv_header(std::ostream& out) {
    out << kBenchCsvHeader << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed to write benchmark csv");
}

void write_bench_csv_row(std::ostream& out, const BenchRow& r) {
    out << r.instance << ',' << r.n_tasks << ',' << r.n_machines << ',' << r.width << ','
        << format_fixed(r.ccr, 2) << ',' << (r.comm_mode == CommMode::IncludeTransfer ? "on" : "off") << ','
        << r.seed << ',' << format_fixed(r.ga_makespan, 6) << ',' << format_fixed(r.minmin_makespan, 6) << ','
        << format_fixed(r.lower_bound, 6) << ',' << format_fixed(r.ga_runtime_ms, 3) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed to write benchmark csv");
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
    write_bench_csv_header(out);
    for (const auto& r : rows) write_bench_csv_row(out, r);
}

GeneratedDag generate_random_dag(const GenSpec& spec) {
    auto infeasible = [](const std::string& msg) { throw Error(ErrorCode::InfeasibleSpec, msg); };
    if (spec.n_tasks < 1) infeasible("n_tasks must be at least 1");
    if (spec.width < 1) infeasible("width must be at least 1");
    if (!(spec.ccr >= 0.0)) infeasible("ccr must be non-negative");
    if (!(spec.work_lo > 0.0) || !(spec.work_lo <= spec.work_hi)) infeasible("work range must satisfy 0 < lo <= hi");
    if (!(spec.bandwidth > 0.0)) infeasible("bandwidth must be positive");

    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.n_tasks;

    // Layer 0 is the entry, the last layer the exit; middle layers hold at most `width`.
    std::vector<std::size_t> layer(n, 0);
    std::vector<std::vector<std::size_t>> layers{{0}};
    if (n >= 2) {
        std::size_t next = 1;
        const std::size_t middle_end = n - 1;
        const std::size_t min_size = std::max<std::size_t>(1, spec.width / 2);
        while (next < middle_end) {
            const std::size_t remaining = middle_end - next;
            const std::size_t hi = std::min(spec.width, remaining);
            const std::size_t lo = std::min(min_size, hi);
            const std::size_t size = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
            layers.emplace_back();
            for (std::size_t k = 0; k < size; ++k) {
                layer[next] = layers.size() - 1;
                layers.back().push_back(next++);
            }
        }
        layer[n - 1] = layers.size();
        layers.push_back({n - 1});
    }

    std::uniform_real_distribution<double> work_dist(spec.work_lo, spec.work_hi);
    std::vector<TaskSpec> tasks(n);
    for (std::size_t i = 0; i < n; ++i) {
        tasks[i].key = "t" + std::to_string(i + 1);
        tasks[i].name = "job" + std::to_string(i + 1);
        tasks[i].work = work_dist(rng);
    }

    const double mean_bytes = spec.ccr * 0.5 * (spec.work_lo + spec.work_hi) * spec.bandwidth;
    std::uniform_real_distribution<double> bytes_dist(0.5 * mean_bytes, 1.5 * mean_bytes);
    auto draw_bytes = [&] { return spec.ccr == 0.0 ? 0.0 : bytes_dist(rng); };

    std::vector<EdgeSpec> edges;
    std::vector<char> has_child(n, 0);
    auto add_edge = [&](std::size_t src, std::size_t dst) {
        has_child[src] = 1;
        edges.push_back(EdgeSpec{tasks[src].key, tasks[dst].key, draw_bytes()});
    };
    for (std::size_t l = 1; l + 1 < layers.size(); ++l) {
        std::vector<std::size_t> pool = layers[l - 1];
        for (std::size_t t : layers[l]) {
            const std::size_t want = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
            const std::size_t k = std::min(want, pool.size());
            // Partial Fisher-Yates over a copy; parents sorted for stable edge order.
            std::vector<std::size_t> pick = pool;
            for (std::size_t a = 0; a < k; ++a) {
                const std::size_t b = std::uniform_int_distribution<std::size_t>(a, pick.size() - 1)(rng);
                std::swap(pick[a], pick[b]);
            }
            pick.resize(k);
            std::sort(pick.begin(), pick.end());
            for (std::size_t parent : pick) add_edge(parent, t);
        }
    }
    if (n >= 2) {
        for (std::size_t t = 0; t + 1 < n; ++t) {
            if (!has_child[t]) add_edge(t, n - 1);
        }
    }

    return GeneratedDag{build_graph(std::move(tasks), std::move(edges)), std::move(layer)};
}

}  // namespace dagsched
