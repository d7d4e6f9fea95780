#include <gtest/gtest.h>

#include <functional>

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

std::size_t leaves(const ReebGraph& g) {
    std::size_t n = 0;
    for (VertexId v : g.vertex_ids()) n += g.deg(v) == 1;
    return n;
}

// Minimum 0 under DownFork 1 over DownFork 2; minimum 3 under DownFork 4. Maximum 7 over UpFork 6 over
// UpFork 5; maximum 9 over UpFork 8. Strands 0..2 join the first D-tree to the first U-tree, forks 2 and
// 5 sit on both root branches, so increasing paths from the DownFork's second branch reach the UpFork.
ReebGraph ring_with_interference() {
    return make_graph({
        {1, 5},  // e0  p1
        {2, 5},  // e1  p2
        {2, 8},  // e2  q
        {4, 6},  // e3  r
        {4, 8},  // e4  t
        {0, 1},  // e5
        {1, 2},  // e6
        {3, 4},  // e7
        {5, 6},  // e8
        {6, 7},  // e9
        {8, 9},  // e10
    });
}

// Four one-fork trees in a ring: 0 -> 1, 2 -> 3 below; 4 -> 5, 6 -> 7 above.
ReebGraph ring_of_four() {
    return make_graph({{1, 4}, {1, 6}, {3, 4}, {3, 6}, {0, 1}, {2, 3}, {4, 5}, {6, 7}});
}

// Checks that, with w' the DownFork above vp and w the UpFork below v, no increasing path joins the free
// branch of w' to the free branch of w.
void expect_free_branches_separated(const ReebGraph& g, VertexId v, VertexId vp) {
    VertexId w = g.src(g.in(v)[0]), wp = g.dst(g.out(vp)[0]);
    Subgraph ip = path_set_IP(g, wp, w);
    std::vector<EdgeId> outs, ins;
    for (EdgeId e : g.out(wp))
        if (ip.edges.count(e)) outs.push_back(e);
    for (EdgeId e : g.in(w))
        if (ip.edges.count(e)) ins.push_back(e);
    ASSERT_EQ(outs.size(), 1u);
    ASSERT_EQ(ins.size(), 1u);
    EdgeId ex = g.out(wp)[0] == outs[0] ? g.out(wp)[1] : g.out(wp)[0];
    EdgeId ey = g.in(w)[0] == ins[0] ? g.in(w)[1] : g.in(w)[0];
    auto [g1, x] = subdivide(g, ex, true);
    auto [g2, y] = subdivide(g1, ey, true);
    EXPECT_TRUE(path_set_IP(g2, x, y).empty());
}

void expect_realizes(const ReebGraph& target, long budget) {
    Plan p = realize(target, budget);
    VerifyResult r = verify_plan(p);
    ASSERT_TRUE(r.ok) << r.message;
    for (auto& s : p.steps)
        if (auto m = std::get_if<MoveInstance>(&s))
            ASSERT_TRUE(two_sided(m->kind) || m->direction == Direction::Forward) << describe(*m);
}

}  // namespace

TEST(ClassifyLeaf, MinimumUnderUpFork) {
    ReebGraph g = make_graph({{0, 2}, {1, 2}, {2, 3}});
    EXPECT_EQ(classify_leaf(g, 0), CaseTag::A);
}

TEST(ClassifyLeaf, MaximumOverSeparatingUpFork) {
    // Two separate D-trees feed UpFork 6 under maximum 7.
    ReebGraph g = make_graph({{0, 1}, {1, 6}, {1, 2}, {3, 4}, {4, 6}, {4, 5}, {6, 7}});
    EXPECT_EQ(classify_leaf(g, 7), CaseTag::B1);
}

TEST(ClassifyLeaf, InterferenceGivesSubcaseOne) {
    EXPECT_EQ(classify_leaf(ring_with_interference(), 0), CaseTag::B2_I);
}

TEST(ClassifyLeaf, DirectStrandGivesSubcaseTwo) { EXPECT_EQ(classify_leaf(ring_of_four(), 0), CaseTag::B2_II); }

TEST(ClassifyLeaf, TwoVertexTree) {
    EXPECT_EQ(code_of([] { (void)classify_leaf(make_graph({{0, 1}}), 0); }), ErrorCode::NeighborDegreeOne);
}

TEST(EliminatePaths, OneInterferingPath) {
    ReebGraph g = ring_with_interference();
    ASSERT_TRUE(is_primitive(g));
    ReductionResult r = eliminate_increasing_paths(g, 7, 0);
    EXPECT_FALSE(r.trace.steps.empty());
    for (auto& m : r.trace.steps) EXPECT_TRUE(two_sided(m.kind));
    EXPECT_EQ(replay(r.trace), r.graph);
    EXPECT_EQ(betti(r.graph), betti(g));
    expect_free_branches_separated(r.graph, 7, 0);
}

TEST(EliminatePaths, AlreadySeparated) {
    ReebGraph g = ring_of_four();
    ReductionResult r = eliminate_increasing_paths(g, 5, 0);
    EXPECT_TRUE(r.trace.steps.empty());
    expect_free_branches_separated(r.graph, 5, 0);
}

TEST(EliminatePaths, GeneratedPrimitiveGraphs) {
    std::size_t runs = 0;
    for (std::uint64_t s = 0; s < 150; ++s) {
        int b = 1 + static_cast<int>(s % 4);
        ReebGraph g = primitivize(smooth(gen_random(s, 2 * b + 6 + static_cast<int>(s % 7), b))).graph;
        for (VertexId vp : g.vertex_ids()) {
            if (g.indeg(vp) != 0) continue;
            if (classify(g, g.dst(g.out(vp)[0])) != VertexClass::DownFork) continue;
            for (VertexId v : g.vertex_ids()) {
                if (g.outdeg(v) != 0 || classify(g, g.src(g.in(v)[0])) != VertexClass::UpFork) continue;
                try {
                    ReductionResult r = eliminate_increasing_paths(g, v, vp);
                    expect_free_branches_separated(r.graph, v, vp);
                    ++runs;
                } catch (const Error& e) {
                    ASSERT_EQ(e.code(), ErrorCode::NoConfiguration) << e.what();
                }
            }
        }
    }
    EXPECT_GT(runs, 50u);
}

TEST(EliminatePaths, Errors) {
    EXPECT_EQ(code_of([] { (void)eliminate_increasing_paths(ring_of_four(), 0, 5); }), ErrorCode::WrongCase);
    // One D-tree and one U-tree sharing every slot.
    EXPECT_EQ(code_of([] { (void)eliminate_increasing_paths(canonical_graph(1), 3, 0); }), ErrorCode::NoConfiguration);
}

TEST(Relevel, AlreadyBelow) {
    ReebGraph g = synthesize_levels(make_graph({{0, 1}, {1, 2}}));
    EXPECT_EQ(relevel_below(g, 0, 2), g);
}

TEST(Relevel, PushesBelow) {
    // y' = 4 sits above x = 2, but 2 does not reach 4.
    ReebGraph g = make_graph({{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {2, 6}});
    ReebGraph l = g;
    for (VertexId v : g.vertex_ids()) l.set_level(v, Rational(v));
    ReebGraph r = relevel_below(l, 4, 2);
    EXPECT_LT(*r.level(4), *r.level(2));
    EXPECT_TRUE(levels_valid(r));
    EXPECT_TRUE(r.same_structure(g));
}

TEST(Relevel, WithoutLevels) {
    ReebGraph g = make_graph({{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {2, 6}});
    ReebGraph r = relevel_below(g, 5, 2);
    EXPECT_TRUE(levels_valid(r));
    EXPECT_LT(*r.level(5), *r.level(2));
}

TEST(Relevel, PathExists) {
    ReebGraph g = make_graph({{0, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(code_of([&] { (void)relevel_below(g, 2, 1); }), ErrorCode::PathExists);
}

TEST(SpliceB1, TwoBranches) {
    ReebGraph g = make_graph({{0, 1}, {1, 6}, {1, 2}, {3, 4}, {4, 6}, {4, 5}, {6, 7}});
    SpliceResult sp = splice_b1(g, 7, 6);
    EXPECT_EQ(betti(sp.graph), betti(g));
    EXPECT_EQ(leaves(sp.graph), leaves(g) - 1);
    EXPECT_EQ(sp.graph.vertex_count(), g.vertex_count() - 2);
    EXPECT_TRUE(is_good_orientation(sp.graph));
    ReebGraph back = sp.graph;
    for (auto& op : sp.undo) back = apply_structural(back, op);
    EXPECT_TRUE(back.same_structure(g));
}

TEST(SpliceB1, SingleStrandSide) {
    // Branch one is the bare minimum 0.
    ReebGraph g = make_graph({{0, 4}, {1, 2}, {2, 4}, {2, 3}, {4, 5}});
    SpliceResult sp = splice_b1(g, 5, 4);
    EXPECT_TRUE(is_good_orientation(sp.graph));
    EXPECT_EQ(sp.graph.vertex_count(), 4u);
    EXPECT_EQ(classify(sp.graph, 0), VertexClass::Maximum);
    EXPECT_EQ(classify(sp.graph, 2), VertexClass::DownFork);
}

TEST(SpliceB1, WrongCase) {
    EXPECT_EQ(code_of([] { (void)splice_b1(ring_of_four(), 0, 1); }), ErrorCode::WrongCase);
}

TEST(SpliceB2, RingOfFour) {
    ReebGraph g = ring_of_four();
    SpliceResult sp = splice_b2(g, 5, 4, 0, 1);
    EXPECT_EQ(leaves(sp.graph), leaves(g) - 2);
    EXPECT_EQ(betti(sp.graph), betti(g));
    EXPECT_TRUE(is_good_orientation(sp.graph));
    ReebGraph back = sp.graph;
    for (auto& op : sp.undo) back = apply_structural(back, op);
    EXPECT_TRUE(back.same_structure(g));
}

TEST(SpliceB2, AfterElimination) {
    ReebGraph g = ring_with_interference();
    ReductionResult r = eliminate_increasing_paths(g, 7, 0);
    VertexId w = r.graph.src(r.graph.in(7)[0]), wp = r.graph.dst(r.graph.out(0)[0]);
    SpliceResult sp = splice_b2(r.graph, 7, w, 0, wp);
    EXPECT_EQ(leaves(sp.graph), leaves(g) - 2);
    EXPECT_EQ(betti(sp.graph), betti(g));
    EXPECT_TRUE(is_good_orientation(sp.graph));
}

TEST(SpliceB2, InterferenceRejected) {
    EXPECT_EQ(code_of([] { (void)splice_b2(ring_with_interference(), 7, 6, 0, 1); }),
              ErrorCode::PreconditionNotEstablished);
}

TEST(Realize, CanonicalTwoCycles) { expect_realizes(canonical_graph(2), 2); }

TEST(Realize, SingleEdge) {
    Plan p = realize(make_graph({{0, 1}}), 0);
    EXPECT_TRUE(p.steps.empty());
    EXPECT_TRUE(verify_plan(p).ok);
}

TEST(Realize, BudgetExceeded) {
    EXPECT_EQ(code_of([] { (void)realize(canonical_graph(3), 2); }), ErrorCode::BudgetExceeded);
}

TEST(Realize, NotGoodOrientation) {
    EXPECT_EQ(code_of([] { (void)realize(make_graph({{0, 2}, {1, 2}}), 5); }), ErrorCode::NotGoodOrientation);
}

TEST(Realize, InitialFormIsIdentity) {
    for (int g = 0; g <= 5; ++g) {
        Plan p = realize(initial_graph(g), g);
        EXPECT_TRUE(p.steps.empty());
        EXPECT_TRUE(verify_plan(p).ok);
    }
}

TEST(Realize, HandInstances) {
    expect_realizes(ring_of_four(), 1);
    expect_realizes(ring_with_interference(), 5);
    expect_realizes(make_graph({{0, 1}, {1, 6}, {1, 2}, {3, 4}, {4, 6}, {4, 5}, {6, 7}}), 0);
    expect_realizes(make_graph({{0, 2}, {1, 2}, {2, 3}, {2, 4}, {2, 5}}), 0);
    expect_realizes(make_graph({{0, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 4}, {3, 5}}), 1);
}

TEST(Realize, GeneratedTargets) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        int b = static_cast<int>(s % 5);
        ReebGraph g = gen_random(s, std::min(20, 2 * b + 2 + static_cast<int>(s % 13)), b);
        expect_realizes(g, b);
    }
}

TEST(Realize, Deterministic) {
    ReebGraph g = gen_random(11, 16, 3);
    EXPECT_EQ(plan_to_json(realize(g, 3)), plan_to_json(realize(g, 3)));
}

TEST(VerifyPlan, IllegalDirection) {
    Plan p = realize(canonical_graph(3), 3);
    bool flipped = false;
    for (auto& s : p.steps)
        if (auto m = std::get_if<MoveInstance>(&s); m && !two_sided(m->kind)) {
            m->direction = Direction::Reverse;
            flipped = true;
            break;
        }
    ASSERT_TRUE(flipped);
    VerifyResult r = verify_plan(p);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.code, ErrorCode::IllegalDirection);
    EXPECT_TRUE(r.step.has_value());
}

TEST(VerifyPlan, TargetSwapped) {
    Plan p = realize(canonical_graph(2), 2);
    p.target = initial_graph(2);
    VerifyResult r = verify_plan(p);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.code, ErrorCode::FinalMismatch);
}

TEST(VerifyPlan, StartMustBeInitial) {
    Plan p = realize(canonical_graph(2), 2);
    p.start = canonical_graph(2);
    EXPECT_EQ(verify_plan(p).code, ErrorCode::StartNotInitial);
}

TEST(VerifyPlan, ReflectMustBeWholeComponent) {
    bool changed = false;
    for (std::uint64_t s = 0; s < 500 && !changed; ++s) {
        int b = static_cast<int>(s % 4);
        Plan p = realize(gen_random(s, 2 * b + 10, b), b);
        for (auto& step : p.steps)
            if (auto op = std::get_if<StructuralOp>(&step);
                op && op->kind == StructuralKind::ReflectComponent && op->reflect.size() >= 2) {
                op->reflect.pop_back();
                changed = true;
                break;
            }
        if (!changed) continue;
        VerifyResult r = verify_plan(p);
        EXPECT_FALSE(r.ok);
        EXPECT_EQ(r.code, ErrorCode::PreconditionNotEstablished);
    }
    EXPECT_TRUE(changed);
}

TEST(VerifyPlan, StructuralStepsPreserveBetti) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        int b = static_cast<int>(s % 4);
        Plan p = realize(gen_random(s, 2 * b + 8, b), b);
        ReebGraph g = p.start;
        for (auto& step : p.steps) {
            if (auto op = std::get_if<StructuralOp>(&step)) {
                ReebGraph next = apply_structural(g, *op);
                ASSERT_EQ(betti(next), betti(g));
                if (op->kind == StructuralKind::ReflectComponent)
                    for (EdgeId e : op->reflect) {
                        ASSERT_EQ(next.src(e), g.dst(e));
                        ASSERT_EQ(next.dst(e), g.src(e));
                    }
                g = next;
            } else {
                g = apply(g, std::get<MoveInstance>(step));
            }
        }
    }
}
