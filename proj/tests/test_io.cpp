#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sys/wait.h>

#include "builders.hpp"
#include "reeb/core.hpp"
#include "reeb/io.hpp"
#include "reeb/planner.hpp"
#include "reeb/reduction.hpp"

using namespace reeb;
using reeb::testing::make_graph;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::InvalidGraph;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(REEB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("reeb_test_" + std::to_string(getpid()) + "_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(GraphDocument, MinimalTwoVertex) {
    const char* doc = R"({"version":"1","vertices":[{"id":0},{"id":1}],"edges":[{"id":0,"src":0,"dst":1}]})";
    ReebGraph g = parse_graph(doc);
    EXPECT_EQ(g, make_graph({{0, 1}}));
}

TEST(GraphDocument, RoundTrip) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        ReebGraph g = gen_random(s, 14, static_cast<int>(s % 4));
        if (s % 2) g = synthesize_levels(g);
        g = subdivide(g, g.edge_ids().front(), true).first;
        std::string text = emit_graph(g);
        ReebGraph back = parse_graph(text);
        EXPECT_EQ(back, g);
        EXPECT_EQ(emit_graph(back), text);
    }
}

TEST(GraphDocument, LevelsAreExactFractions) {
    ReebGraph g = make_graph({{0, 1}});
    g.set_level(0, Rational(-1, 3));
    g.set_level(1, Rational(5, 2));
    Json j = graph_to_json(g);
    EXPECT_EQ(j["vertices"][0]["level"]["num"], -1);
    EXPECT_EQ(j["vertices"][0]["level"]["den"], 3);
    EXPECT_EQ(*parse_graph(j.dump()).level(1), Rational(5, 2));
}

TEST(GraphDocument, DanglingReference) {
    const char* doc = R"({"version":"1","vertices":[{"id":0}],"edges":[{"id":0,"src":0,"dst":7}]})";
    EXPECT_EQ(code_of([&] { (void)parse_graph(doc); }), ErrorCode::DanglingReference);
}

TEST(GraphDocument, SchemaErrors) {
    const char* docs[] = {
        R"({"vertices":[{"id":0},{"id":1}],"edges":[]})",
        R"({"version":"1","vertices":[{"id":0},{"id":0}],"edges":[]})",
        R"({"version":"1","vertices":[{"id":0},{"id":1}],"edges":[{"id":0,"src":0,"dst":1},{"id":0,"src":0,"dst":1}]})",
        R"({"version":"1","vertices":[{"id":0}],"edges":[{"id":0,"src":0,"dst":0}]})",
        R"({"version":"1","vertices":[{"id":"a"}],"edges":[]})",
        R"({"version":"1","vertices":[{"id":0,"level":{"num":1,"den":0}},{"id":1}],"edges":[]})",
        R"({"version":"1","vertices":[{"id":0,"level":{"num":2,"den":1}},{"id":1,"level":{"num":1,"den":1}}],"edges":[{"id":0,"src":0,"dst":1}]})",
    };
    for (const char* d : docs) EXPECT_EQ(code_of([&] { (void)parse_graph(d); }), ErrorCode::SchemaError) << d;
    EXPECT_EQ(code_of([] { (void)parse_graph("{not json"); }), ErrorCode::ParseError);
}

TEST(Serialization, TraceRoundTrip) {
    ReductionResult r = canonicalize(gen_random(3, 14, 2));
    Json j = trace_to_json(r.trace);
    Trace back = trace_from_json(j);
    EXPECT_EQ(back.start, r.trace.start);
    EXPECT_EQ(back.end, r.trace.end);
    EXPECT_EQ(back.steps, r.trace.steps);
    EXPECT_EQ(trace_to_json(back), j);
}

TEST(Serialization, PlanRoundTrip) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        int b = static_cast<int>(s % 4);
        Plan p = realize(gen_random(s, 2 * b + 10, b), b);
        Json j = plan_to_json(p);
        Plan back = plan_from_json(parse_json_text(j.dump()));
        EXPECT_EQ(back.start, p.start);
        EXPECT_EQ(back.target, p.target);
        EXPECT_EQ(back.steps, p.steps);
        EXPECT_TRUE(verify_plan(back).ok);
    }
}

TEST(Serialization, BadMoveKind) {
    Json j = move_to_json(match_sites(canonical_graph(1), MoveKind::M7, Direction::Forward)[0]);
    j["kind"] = "M42";
    EXPECT_EQ(code_of([&] { (void)move_from_json(j); }), ErrorCode::SchemaError);
}

TEST(Dot, SingleEdge) {
    std::string dot = emit_dot(make_graph({{0, 1}}));
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    EXPECT_NE(dot.find("Minimum"), std::string::npos);
    EXPECT_NE(dot.find("Maximum"), std::string::npos);
}

TEST(Dot, EdgeCountMatches) {
    for (ReebGraph g : {canonical_graph(1), canonical_graph(3), gen_random(5, 18, 3)}) {
        std::string dot = emit_dot(g);
        std::size_t arrows = 0;
        for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++arrows;
        EXPECT_EQ(arrows, g.edge_count());
    }
    // Two parallel strands of the single cycle.
    std::string dot = emit_dot(canonical_graph(1));
    std::size_t twice = 0;
    for (std::size_t p = dot.find("v1 -> v2"); p != std::string::npos; p = dot.find("v1 -> v2", p + 1)) ++twice;
    EXPECT_EQ(twice, 2u);
}

TEST(Dot, RejectsBadOrientation) {
    EXPECT_EQ(code_of([] { (void)emit_dot(make_graph({{0, 2}, {1, 2}})); }), ErrorCode::NotGoodOrientation);
}

TEST(GenRandom, Deterministic) { EXPECT_EQ(gen_random(42, 20, 3), gen_random(42, 20, 3)); }

TEST(GenRandom, TreeAtBettiZero) {
    ReebGraph g = gen_random(9, 6, 0);
    EXPECT_TRUE(is_good_orientation(g));
    EXPECT_EQ(betti(g), 0);
    EXPECT_EQ(g.vertex_count(), 6u);
}

TEST(GenRandom, Infeasible) {
    EXPECT_EQ(code_of([] { (void)gen_random(1, 4, 3); }), ErrorCode::Infeasible);
    EXPECT_EQ(code_of([] { (void)gen_random(1, 1, 0); }), ErrorCode::Infeasible);
}

TEST(GenRandom, AlwaysValid) {
    for (std::uint64_t s = 0; s < 500; ++s) {
        int n = 2 + static_cast<int>(s % 39), b = static_cast<int>(s % 7);
        if (n < 2 * b + 2) continue;
        ReebGraph g = gen_random(s, n, b);
        ASSERT_TRUE(is_good_orientation(g));
        ASSERT_TRUE(counting_identities(g));
        ASSERT_EQ(betti(g), b);
        ASSERT_EQ(static_cast<int>(g.vertex_count()), n);
        ASSERT_LE(g.max_degree(), 3u);
    }
}

TEST(Cli, ReebNumberKlein) {
    RunResult r = run_cli("reeb-number 'N(2)'");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(Json::parse(r.out)["value"], 1);
}

TEST(Cli, BettiOfCanonical) {
    std::string path = write_temp("c2.json", emit_graph(canonical_graph(2)));
    RunResult r = run_cli("betti " + path);
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"betti":2})"));
}

TEST(Cli, PlanThenVerify) {
    std::string target = write_temp("t.json", emit_graph(gen_random(4, 14, 2)));
    std::string plan = write_temp("plan.json", "");
    RunResult p = run_cli("plan --target " + target + " --manifold 'Sig(2)' -o " + plan);
    ASSERT_EQ(p.exit_code, 0) << p.out;
    RunResult v = run_cli("verify-plan " + plan);
    EXPECT_EQ(v.exit_code, 0) << v.out;
    EXPECT_EQ(Json::parse(v.out)["ok"], true);
}

TEST(Cli, ExitCodes) {
    std::string c2 = write_temp("c2b.json", emit_graph(canonical_graph(2)));
    EXPECT_EQ(run_cli("plan --target " + c2 + " --budget 1").exit_code, 1);
    EXPECT_EQ(run_cli("drop-cycles -k 5 " + c2).exit_code, 1);
    std::string junk = write_temp("junk.json", "{oops");
    EXPECT_EQ(run_cli("betti " + junk).exit_code, 2);
    EXPECT_EQ(run_cli("reeb-number 'Q(3)'").exit_code, 2);
    EXPECT_EQ(run_cli("no-such-command").exit_code, 2);
    RunResult e = run_cli("betti " + junk);
    EXPECT_EQ(Json::parse(e.out)["error"], "ParseError");
}

TEST(Cli, DeterministicGenRandom) {
    RunResult a = run_cli("gen-random --seed 7 --vertices 16 --betti 3");
    RunResult b = run_cli("gen-random --seed 7 --vertices 16 --betti 3");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(parse_graph(a.out), gen_random(7, 16, 3));
}
