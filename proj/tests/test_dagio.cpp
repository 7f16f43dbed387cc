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

#include <map>
#include <regex>
#include <sstream>

#include "bench.hpp"
#include "dagio.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fixtures.hpp"

using namespace dagsched;
using namespace dagsched::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Ok;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::size_t count_fields(const std::string& line) { return 1 + std::count(line.begin(), line.end(), ','); }

}  // namespace

TEST_CASE("parse_dag") {
    SUBCASE("reference document") {
        const std::string doc = serialize_dag(reference_dag());
        const TaskGraph g = parse_dag(doc);
        CHECK(g.size() == 10);
        std::vector<std::uint32_t> h;
        const HeightMap heights = compute_heights(g);
        for (int k = 1; k <= 10; ++k) h.push_back(heights[tid(g, k)]);
        CHECK(h == std::vector<std::uint32_t>{1, 2, 2, 2, 4, 3, 4, 3, 5, 6});
    }
    SUBCASE("integer ids, optional name and bytes") {
        const TaskGraph g = parse_dag(R"({"tasks":[{"id":1,"work":2},{"id":2,"work":3,"name":"b"}],
                                          "edges":[{"src":1,"dst":2}]})");
        CHECK(g.task(TaskId{0}).name == "1");
        CHECK(g.task(TaskId{1}).name == "b");
        CHECK(g.edges()[0].bytes == 0.0);
    }
    SUBCASE("errors") {
        CHECK(code_of([] { parse_dag(R"({"tasks":[]})"); }) == ErrorCode::SchemaError);
        CHECK(code_of([] { parse_dag(R"({"edges":[]})"); }) == ErrorCode::SchemaError);
        CHECK(code_of([] { parse_dag(R"({"tasks":[{"id":"a","work":1,"colour":2}]})"); }) == ErrorCode::SchemaError);
        CHECK(code_of([] { parse_dag(R"({"tasks":[{"id":"a","work":"x"}]})"); }) == ErrorCode::SchemaError);
        CHECK(code_of([] { parse_dag(R"({"tasks":[{"id":"a","work":1,"name":7}]})"); }) == ErrorCode::SchemaError);
        CHECK(code_of([] { parse_dag(R"({"tasks":[{"id":"a","work":1}],"edges":[{"src":"a","dst":"z"}]})"); }) ==
              ErrorCode::UnknownEdgeEndpoint);
        CHECK(code_of([] { parse_dag(R"({"tasks":[{"id":"a","work":1}],"edges":[{"src":"a","dst":"a"}]})"); }) ==
              ErrorCode::SelfLoop);
    }
    SUBCASE("syntax errors report a position") {
        try {
            parse_dag("{\n  \"tasks\": [\n    {\"id\": \"a\" \"work\": 1}\n  ]\n}");
            FAIL("expected a syntax error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SyntaxError);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
}

TEST_CASE("parse_platform") {
    SUBCASE("default link") {
        const Platform p = parse_platform(R"({"machines":[{"id":"a","speed":1},{"id":"b","speed":2}],
                                              "default_link":{"bandwidth":10,"latency":0}})");
        CHECK(transfer_time(p, 20, MachineId{0}, MachineId{1}) == 2.0);
    }
    SUBCASE("single machine without links") {
        const Platform p = parse_platform(R"({"machines":[{"id":"solo","speed":1}]})");
        CHECK(transfer_time(p, 20, MachineId{0}, MachineId{0}) == 0.0);
    }
    SUBCASE("errors") {
        CHECK(code_of([] { parse_platform(R"({"machines":[{"id":"a","speed":0}]})"); }) ==
              ErrorCode::NonPositiveSpeed);
        CHECK(code_of([] {
                  parse_platform(R"({"machines":[{"id":"a","speed":1}],"default_link":{"bandwidth":0}})");
              }) == ErrorCode::NonPositiveBandwidth);
        CHECK(code_of([] { parse_platform(R"({"machines":[]})"); }) == ErrorCode::SchemaError);
        CHECK(code_of([] { parse_platform(R"({"machines":[{"id":"a","speed":1}],"extra":1})"); }) ==
              ErrorCode::SchemaError);
        CHECK(code_of([] { parse_platform("[1,"); }) == ErrorCode::SyntaxError);
    }
}

TEST_CASE("documents round-trip") {
    SUBCASE("dag") {
        const TaskGraph g = reference_dag();
        const std::string once = serialize_dag(g);
        const TaskGraph back = parse_dag(once);
        CHECK(serialize_dag(back) == once);
        REQUIRE(back.size() == g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(back.tasks()[i].key == g.tasks()[i].key);
            CHECK(back.tasks()[i].name == g.tasks()[i].name);
            CHECK(back.tasks()[i].work == g.tasks()[i].work);
        }
        REQUIRE(back.edges().size() == g.edges().size());
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            CHECK(back.edges()[i].src == g.edges()[i].src);
            CHECK(back.edges()[i].dst == g.edges()[i].dst);
            CHECK(back.edges()[i].bytes == g.edges()[i].bytes);
        }
    }
    SUBCASE("generated dag with fractional values") {
        GenSpec spec;
        spec.n_tasks = 30;
        const TaskGraph g = generate_random_dag(spec).graph;
        CHECK(serialize_dag(parse_dag(serialize_dag(g))) == serialize_dag(g));
    }
    SUBCASE("platform") {
        std::mt19937_64 rng(71);
        const Platform p = random_platform(rng, 3);
        const std::string once = serialize_platform(p);
        const Platform back = parse_platform(once);
        CHECK(serialize_platform(back) == once);
        for (std::uint32_t a = 0; a < 3; ++a) {
            CHECK(back.machine(MachineId{a}).speed == p.machine(MachineId{a}).speed);
            for (std::uint32_t b = 0; b < 3; ++b) {
                CHECK(transfer_time(back, 7, MachineId{a}, MachineId{b}) == transfer_time(p, 7, MachineId{a}, MachineId{b}));
            }
        }
    }
    SUBCASE("platform with etc") {
        const Platform p = build_platform({{"a", "A", 1}, {"b", "B", 2}}, std::nullopt, {},
                                          std::vector<std::vector<double>>{{1.5, 2}, {3, 0.25}});
        const Platform back = parse_platform(serialize_platform(p));
        CHECK(back.etc() == p.etc());
        CHECK_FALSE(back.default_link());
    }
}

TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "dagsched_io_test";
    std::filesystem::create_directories(dir);
    write_file(dir / "g.json", serialize_dag(reference_dag()));
    CHECK(load_dag(dir / "g.json").size() == 10);
    try {
        load_dag(dir / "missing.json");
        FAIL("expected an io error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
        CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("schedule log") {
    SUBCASE("single task") {
        const TaskGraph g = build_graph({{"1", "job1", 7}}, {});
        const Platform p = uniform_platform(2);
        const Chromosome c{{TaskId{0}}, machines_of({2}), std::nullopt};
        std::ostringstream out;
        write_schedule_log(out, g, p, c, evaluate(g, p, c));
        CHECK(out.str() == "Schedule job1 on Machine2\nSimulation Time: 7.000000\n");
    }
    SUBCASE("six decimals") {
        CHECK(format_fixed(74.120253, 6) == "74.120253");
        CHECK(format_fixed(7, 6) == "7.000000");
        CHECK(format_fixed(0.1234565, 6).size() == 8);
    }
    SUBCASE("lines follow start times") {
        const TaskGraph g = reference_dag();
        const Platform p = uniform_platform(3, 10.0, 0.0, {1, 2, 3});
        const Chromosome placed = chromosome(g, {1, 3, 6, 2, 5, 4, 8, 7, 9, 10}, {1, 2, 3, 1, 2, 3, 1, 2, 3, 1});
        const Timeline tl = evaluate(g, p, placed);
        std::ostringstream out;
        write_schedule_log(out, g, p, placed, tl);
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 11);
        const std::regex line_re(R"(Schedule (\S+) on (\S+))");
        double previous = -1;
        for (std::size_t i = 0; i < 10; ++i) {
            std::smatch m;
            REQUIRE(std::regex_match(lines[i], m, line_re));
            const TaskId t = g.at(m[1].str().substr(3));
            CHECK(p.machine(tl[t].machine).name == m[2].str());
            CHECK(tl[t].start >= previous);
            previous = tl[t].start;
        }
        CHECK(std::regex_match(lines[10], std::regex(R"(Simulation Time: \d+\.\d{6})")));
        CHECK(lines[10] == "Simulation Time: " + format_fixed(tl.makespan, 6));
    }
}

TEST_CASE("bench csv") {
    SUBCASE("header only") {
        std::ostringstream out;
        write_bench_csv(out, {});
        CHECK(out.str() ==
              "instance,n_tasks,n_machines,width,ccr,comm_mode,seed,ga_makespan,minmin_makespan,lower_bound,"
              "ga_runtime_ms\n");
    }
    SUBCASE("one row") {
        BenchRow row{"10x2-s1", 10, 2, 3, 0.5, CommMode::IncludeTransfer, 1, 80.5, 90.25, 60, 1.5};
        std::ostringstream out;
        write_bench_csv(out, std::vector<BenchRow>{row});
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 2);
        CHECK(count_fields(lines[1]) == 11);
        CHECK(lines[1] == "10x2-s1,10,2,3,0.50,on,1,80.500000,90.250000,60.000000,1.500");
    }
}

TEST_CASE("generate_random_dag") {
    SUBCASE("structure") {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            GenSpec spec;
            spec.seed = seed;
            const GeneratedDag d = generate_random_dag(spec);
            const TaskGraph& g = d.graph;
            CHECK(g.size() == 10);
            CHECK(g.entries().size() == 1);
            CHECK(g.exits().size() == 1);
            std::map<std::size_t, std::size_t> per_layer;
            for (std::size_t l : d.layer) ++per_layer[l];
            for (const auto& [l, count] : per_layer) CHECK(count <= 3);
            for (const auto& e : g.edges()) {
                if (e.dst != g.exits()[0]) CHECK(d.layer[e.dst.idx()] == d.layer[e.src.idx()] + 1);
            }
            for (std::size_t t = 0; t < g.size(); ++t) {
                if (TaskId{t} == g.entries()[0] || TaskId{t} == g.exits()[0]) continue;
                const auto n_parents = g.parents(TaskId{t}).size();
                CHECK(n_parents >= 1);
                CHECK(n_parents <= 3);
            }
            for (const auto& task : g.tasks()) {
                CHECK(task.work >= spec.work_lo);
                CHECK(task.work <= spec.work_hi);
            }
        }
    }
    SUBCASE("ccr calibration") {
        GenSpec spec;
        spec.n_tasks = 400;
        spec.width = 10;
        spec.ccr = 2.0;
        const TaskGraph g = generate_random_dag(spec).graph;
        double bytes = 0, work = 0;
        for (const auto& e : g.edges()) bytes += e.bytes;
        for (const auto& t : g.tasks()) work += t.work;
        const double ratio = (bytes / g.edges().size() / spec.bandwidth) / (work / g.size());
        CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("ccr 0 gives zero bytes") {
        GenSpec spec;
        spec.ccr = 0;
        const GeneratedDag d = generate_random_dag(spec);
        for (const auto& e : d.graph.edges()) CHECK(e.bytes == 0.0);
    }
    SUBCASE("deterministic") {
        GenSpec spec;
        spec.n_tasks = 45;
        spec.width = 7;
        spec.seed = 9;
        CHECK(serialize_dag(generate_random_dag(spec).graph) == serialize_dag(generate_random_dag(spec).graph));
        GenSpec other = spec;
        other.seed = 10;
        CHECK(serialize_dag(generate_random_dag(spec).graph) != serialize_dag(generate_random_dag(other).graph));
    }
    SUBCASE("tiny and invalid specs") {
        GenSpec spec;
        spec.n_tasks = 1;
        CHECK(generate_random_dag(spec).graph.size() == 1);
        spec.n_tasks = 2;
        CHECK(generate_random_dag(spec).graph.edges().size() == 1);
        spec.n_tasks = 0;
        CHECK(code_of([&] { generate_random_dag(spec); }) == ErrorCode::InfeasibleSpec);
        spec.n_tasks = 5;
        spec.width = 0;
        CHECK(code_of([&] { generate_random_dag(spec); }) == ErrorCode::InfeasibleSpec);
        spec.width = 2;
        spec.work_lo = 0;
        CHECK(code_of([&] { generate_random_dag(spec); }) == ErrorCode::InfeasibleSpec);
    }
}

TEST_CASE("bench shapes") {
    CHECK(default_bench_shapes().size() == 9);
    const auto shapes = parse_bench_shapes("10x2,25x7:10,16x3");
    REQUIRE(shapes.size() == 3);
    CHECK(shapes[0].width == 3);
    CHECK(shapes[1].n_machines == 7);
    CHECK(shapes[1].width == 10);
    CHECK(shapes[2].width == 4);
    CHECK(code_of([] { parse_bench_shapes("10y2"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("run_bench") {
    BenchConfig cfg;
    cfg.shapes = parse_bench_shapes("10x2,12x3");
    cfg.seeds = 3;
    cfg.timing = false;
    const auto a = run_bench(cfg);
    REQUIRE(a.size() == 6);
    CHECK(a[0].row.instance == "10x2-s1");
    for (const auto& o : a) {
        CHECK(o.row.ga_makespan >= o.row.lower_bound - 1e-9);
        CHECK(o.row.ga_makespan <= o.seed_makespan + 1e-9);
        CHECK(o.series_non_increasing);
        CHECK(o.row.ga_runtime_ms == 0.0);
    }
    cfg.threads = 3;
    cfg.ga.eval_threads = 2;
    const auto b = run_bench(cfg);
    std::ostringstream sa, sb;
    for (const auto& o : a) write_bench_csv_row(sa, o.row);
    for (const auto& o : b) write_bench_csv_row(sb, o.row);
    CHECK(sa.str() == sb.str());
}
