#include "reeb/planner.hpp"

#include <algorithm>

#include "reeb/core.hpp"

namespace reeb {

const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::A: return "A";
        case CaseTag::B1: return "B1";
        case CaseTag::B2_I: return "B2_I";
        case CaseTag::B2_II: return "B2_II";
    }
    return "?";
}

const char* to_string(StructuralKind k) {
    switch (k) {
        case StructuralKind::SpliceB1: return "SpliceB1";
        case StructuralKind::SpliceB2: return "SpliceB2";
        case StructuralKind::ReflectComponent: return "ReflectComponent";
        case StructuralKind::CollapseGadget: return "CollapseGadget";
    }
    return "?";
}

std::optional<StructuralKind> structural_kind_from_string(const std::string& s) {
    for (auto k : {StructuralKind::SpliceB1, StructuralKind::SpliceB2, StructuralKind::ReflectComponent,
                   StructuralKind::CollapseGadget})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

namespace {

thread_local RealizeStats g_stats;

EdgeId other_of(const std::vector<EdgeId>& pair, EdgeId e) { return pair[0] == e ? pair[1] : pair[0]; }

bool is_cls(const ReebGraph& g, VertexId v, VertexClass c) {
    auto k = try_classify(g, v);
    return k && *k == c;
}

// ---- D-trees (minimum plus the DownForks over it) and U-trees (maximum plus the UpForks under it) ----

VertexId node_of(const ReebGraph& g, EdgeId pos, bool down) { return down ? g.dst(pos) : g.src(pos); }

bool tree_fork(const ReebGraph& g, VertexId x, bool down) {
    return down ? (g.indeg(x) == 1 && g.outdeg(x) == 2) : (g.indeg(x) == 2 && g.outdeg(x) == 1);
}

std::vector<EdgeId> children(const ReebGraph& g, EdgeId pos, bool down) {
    VertexId x = node_of(g, pos, down);
    if (!tree_fork(g, x, down)) return {};
    return down ? g.out(x) : g.in(x);
}

bool subtree_has(const ReebGraph& g, EdgeId pos, EdgeId target, bool down) {
    if (pos == target) return true;
    for (EdgeId c : children(g, pos, down))
        if (subtree_has(g, c, target, down)) return true;
    return false;
}

void collect(const ReebGraph& g, EdgeId pos, bool down, std::vector<EdgeId>& slots, std::set<VertexId>& nodes) {
    auto ch = children(g, pos, down);
    if (ch.empty()) {
        slots.push_back(pos);
        return;
    }
    nodes.insert(node_of(g, pos, down));
    for (EdgeId c : ch) collect(g, c, down, slots, nodes);
}

struct Tree {
    bool down = true;
    VertexId leaf = 0;
    EdgeId root = 0;
    std::set<VertexId> nodes;   // leaf and forks
    std::vector<EdgeId> slots;  // strands leaving the tree, by id
};

Tree tree_of(const ReebGraph& g, VertexId leaf) {
    Tree t;
    t.down = g.indeg(leaf) == 0;
    t.leaf = leaf;
    t.root = t.down ? g.out(leaf)[0] : g.in(leaf)[0];
    t.nodes.insert(leaf);
    collect(g, t.root, t.down, t.slots, t.nodes);
    std::sort(t.slots.begin(), t.slots.end());
    return t;
}

// The extremum of the opposite tree that a slot of t feeds into.
VertexId partner_leaf(const ReebGraph& g, const Tree& t, EdgeId slot) {
    if (t.down) {
        VertexId x = g.dst(slot);
        while (g.outdeg(x) == 1 && g.indeg(x) == 2) x = g.dst(g.out(x)[0]);
        return x;
    }
    VertexId x = g.src(slot);
    while (g.indeg(x) == 1 && g.outdeg(x) == 2) x = g.src(g.in(x)[0]);
    return x;
}

MoveInstance mv(MoveKind k, std::vector<VertexId> v, std::vector<EdgeId> e, std::array<int, 3> sigma) {
    MoveInstance m;
    m.kind = k;
    m.v = std::move(v);
    m.e = std::move(e);
    m.sigma = sigma;
    return m;
}

int position_in(const std::array<EdgeId, 3>& V, EdgeId e) {
    for (int i = 0; i < 3; ++i)
        if (V[i] == e) return i + 1;
    fail(ErrorCode::NoConfiguration, "strand not at rotation site");
}

std::array<int, 3> with_first(int f) {
    std::array<int, 3> s{f, 0, 0};
    int k = 1;
    for (int i = 1; i <= 3; ++i)
        if (i != f) s[k++] = i;
    return s;
}

std::array<int, 3> with_last(int l) {
    std::array<int, 3> s{0, 0, l};
    int k = 0;
    for (int i = 1; i <= 3; ++i)
        if (i != l) s[k++] = i;
    return s;
}

// Rotates until `target` (inside the subtree at root_pos) is a direct child of the fork at root_pos.
void lift(TraceBuilder& tb, EdgeId root_pos, EdgeId target, bool down) {
    for (;;) {
        const ReebGraph& g = tb.graph();
        auto ch = children(g, root_pos, down);
        if (ch.empty()) fail(ErrorCode::NoConfiguration, "rotation below a slot");
        if (ch[0] == target || ch[1] == target) return;
        EdgeId c = subtree_has(g, ch[0], target, down) ? ch[0] : ch[1];
        VertexId node = node_of(g, root_pos, down), b = node_of(g, c, down);
        auto bch = children(g, c, down);
        EdgeId bj = subtree_has(g, bch[0], target, down) ? bch[0] : bch[1];
        if (down) {
            std::array<EdgeId, 3> V{g.out(b)[0], g.out(b)[1], other_of(g.out(node), c)};
            tb.push(mv(MoveKind::M5, {node, b}, {c}, with_last(position_in(V, bj))));
        } else {
            std::array<EdgeId, 3> V{other_of(g.in(node), c), g.in(b)[0], g.in(b)[1]};
            tb.push(mv(MoveKind::M4, {node, b}, {c}, with_first(position_in(V, bj))));
        }
    }
}

// Rearranges the tree into a caterpillar whose slots appear in `order`, nearest the root first.
void caterpillarize(TraceBuilder& tb, EdgeId root_pos, const std::vector<EdgeId>& order, bool down) {
    EdgeId pos = root_pos;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        lift(tb, pos, order[i], down);
        pos = other_of(children(tb.graph(), pos, down), order[i]);
    }
}

// Afterwards one child of the root fork carries exactly the slots in P.
void make_root_split(TraceBuilder& tb, const Tree& t, const std::vector<EdgeId>& P) {
    std::vector<EdgeId> Q;
    for (EdgeId s : t.slots)
        if (std::find(P.begin(), P.end(), s) == P.end()) Q.push_back(s);
    if (P.empty() || Q.empty()) fail(ErrorCode::NoConfiguration, "root split needs slots on both sides");
    std::vector<EdgeId> sorted_p = P;
    std::sort(sorted_p.begin(), sorted_p.end());
    for (EdgeId c : children(tb.graph(), t.root, t.down)) {
        std::vector<EdgeId> slots;
        std::set<VertexId> nodes;
        collect(tb.graph(), c, t.down, slots, nodes);
        std::sort(slots.begin(), slots.end());
        if (slots == sorted_p) return;
    }
    std::vector<EdgeId> order = Q;
    order.insert(order.end(), P.begin(), P.end());
    caterpillarize(tb, t.root, order, t.down);
    EdgeId pos = t.root;
    for (EdgeId q : Q) pos = other_of(children(tb.graph(), pos, t.down), q);
    lift(tb, t.root, pos, t.down);
}

// Slots of t grouped by the component of G minus the tree that they lead into. Used as the cut-node test.
std::vector<std::vector<EdgeId>> slot_groups(const ReebGraph& g, const Tree& t) {
    auto comps = components_without(g, t.nodes);
    std::vector<std::vector<EdgeId>> groups(comps.size());
    for (EdgeId s : t.slots) {
        VertexId far = t.down ? g.dst(s) : g.src(s);
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (comps[i].count(far)) groups[i].push_back(s);
    }
    groups.erase(std::remove_if(groups.begin(), groups.end(), [](auto& x) { return x.empty(); }), groups.end());
    return groups;
}

std::set<EdgeId> internal_edges(const ReebGraph& g, const std::set<VertexId>& vs) {
    std::set<EdgeId> out;
    for (VertexId x : vs)
        for (EdgeId e : g.out(x))
            if (vs.count(g.dst(e))) out.insert(e);
    return out;
}

const std::set<VertexId>* component_of(const std::vector<std::set<VertexId>>& comps, VertexId x) {
    for (auto& c : comps)
        if (c.count(x)) return &c;
    return nullptr;
}

void require_vertex(const ReebGraph& g, VertexId v) {
    if (!g.has_vertex(v)) fail(ErrorCode::WrongCase, "no vertex " + std::to_string(v));
}

// ---- recursion ----

struct Partial {
    ReebGraph start;
    std::vector<PlanStep> steps;
};

Partial realize_core(const ReebGraph& g);

std::size_t leaf_count(const ReebGraph& g) {
    std::size_t n = 0;
    for (auto& [v, d] : g.vertices()) n += d.in.size() + d.out.size() == 1;
    return n;
}

// The recursion measure: extrema first, then vertices.
Partial descend(const ReebGraph& from, const ReebGraph& to) {
    auto a = std::make_pair(leaf_count(to), to.vertex_count()), b = std::make_pair(leaf_count(from), from.vertex_count());
    if (!(a < b)) fail(ErrorCode::PreconditionNotEstablished, "realization step did not shrink the graph");
    return realize_core(to);
}

void append_trace(Partial& p, const Trace& t) {
    for (auto& m : t.steps) p.steps.push_back(m);
}

Partial base_case(const ReebGraph& p) {
    ++g_stats.base;
    if (betti(p) == 0 || is_initial_form(p)) return {p, {}};
    VertexId mn = 0, mx = 0;
    for (auto& [v, d] : p.vertices()) {
        if (d.in.empty()) mn = v;
        if (d.out.empty()) mx = v;
    }
    Tree U = tree_of(p, mx), D = tree_of(p, mn);
    TraceBuilder tb(p);
    caterpillarize(tb, U.root, U.slots, false);
    caterpillarize(tb, D.root, U.slots, true);
    Trace t = tb.take();
    if (!is_initial_form(t.end)) fail(ErrorCode::PreconditionNotEstablished, "caterpillars do not give the initial graph");
    Partial out{t.end, {}};
    append_trace(out, invert(t));
    return out;
}

std::vector<VertexId> ordered_leaves(const ReebGraph& p) {
    ReebGraph lv = synthesize_levels(p);
    std::vector<VertexId> leaves;
    for (auto& [v, d] : p.vertices())
        if (d.in.size() + d.out.size() == 1) leaves.push_back(v);
    std::sort(leaves.begin(), leaves.end(), [&](VertexId a, VertexId b) {
        auto la = *lv.level(a), lb = *lv.level(b);
        if (la != lb) return la < lb;
        bool ma = p.outdeg(a) == 0, mb = p.outdeg(b) == 0;
        if (ma != mb) return !ma;
        return a < b;
    });
    return leaves;
}

Partial realize_primitive(const ReebGraph& p) {
    auto prof = degree_profile(p);
    if (prof.k0 == 1 && prof.kn == 1) return base_case(p);
    auto leaves = ordered_leaves(p);

    for (VertexId v : leaves) {
        bool is_min = p.indeg(v) == 0;
        EdgeId ev = is_min ? p.out(v)[0] : p.in(v)[0];
        VertexId w = p.other_end(ev, v);
        if (is_min && is_cls(p, w, VertexClass::UpFork)) {
            ++g_stats.case_a;
            Applied ap = apply_move(p, mv(MoveKind::M8, {v, w}, {ev}, {1, 2, 3}));
            Partial sub = descend(p, ap.graph);
            sub.steps.push_back(ap.inverse);
            return sub;
        }
        if (!is_min && is_cls(p, w, VertexClass::DownFork)) {
            ++g_stats.case_a;
            Applied ap = apply_move(p, mv(MoveKind::M9, {v, w}, {ev}, {1, 2, 3}));
            Partial sub = descend(p, ap.graph);
            sub.steps.push_back(ap.inverse);
            return sub;
        }
    }

    for (VertexId v : leaves) {
        Tree t = tree_of(p, v);
        auto groups = slot_groups(p, t);
        if (groups.size() < 2) continue;
        ++g_stats.case_b1;
        TraceBuilder tb(p);
        make_root_split(tb, t, groups[0]);
        Trace rot = tb.take();
        const ReebGraph& r = rot.end;
        VertexId w = r.other_end(t.root, v);
        SpliceResult sp = splice_b1(r, v, w);
        Partial sub = descend(p, sp.graph);
        for (auto& op : sp.undo) sub.steps.push_back(op);
        append_trace(sub, invert(rot));
        return sub;
    }

    // No cut node: every tree has two or more neighbours, so any adjacent pair works.
    VertexId v = leaves.front();
    Tree t = tree_of(p, v);
    VertexId other = partner_leaf(p, t, t.slots.front());
    VertexId vmax = t.down ? other : v, vmin = t.down ? v : other;
    ++g_stats.case_b2;
    ReductionResult rb = eliminate_increasing_paths(p, vmax, vmin);
    const ReebGraph& r = rb.graph;
    VertexId w = r.src(r.in(vmax)[0]), wp = r.dst(r.out(vmin)[0]);
    SpliceResult sp = splice_b2(r, vmax, w, vmin, wp);
    Partial sub = descend(p, sp.graph);
    for (auto& op : sp.undo) sub.steps.push_back(op);
    append_trace(sub, invert(rb.trace));
    return sub;
}

Partial realize_core(const ReebGraph& g) {
    ReductionResult pr = primitivize(g);
    Partial part = realize_primitive(pr.graph);
    append_trace(part, invert(pr.trace));
    return part;
}

}  // namespace

const RealizeStats& last_realize_stats() { return g_stats; }

CaseTag classify_leaf(const ReebGraph& g, VertexId v) {
    require_vertex(g, v);
    if (g.deg(v) != 1) fail(ErrorCode::WrongCase, "vertex " + std::to_string(v) + " is not an extremum");
    bool is_min = g.indeg(v) == 0;
    EdgeId ev = is_min ? g.out(v)[0] : g.in(v)[0];
    VertexId w = g.other_end(ev, v);
    if (g.deg(w) == 1) fail(ErrorCode::NeighborDegreeOne, "neighbour of " + std::to_string(v) + " is an extremum");
    if (g.deg(w) != 3) fail(ErrorCode::UnsupportedDegree, "neighbour of a leaf must be a fork");
    bool up = g.indeg(w) == 2;
    if (is_min == up) return CaseTag::A;
    if (components_without(g, {w}).size() == 3) return CaseTag::B1;

    Tree t = tree_of(g, v);
    VertexId other = partner_leaf(g, t, t.slots.front());
    VertexId vmax = t.down ? other : v, vmin = t.down ? v : other;
    VertexId wu = g.src(g.in(vmax)[0]), wd = g.dst(g.out(vmin)[0]);
    Subgraph ip = path_set_IP(g, wd, wu);
    bool has_up = false, has_down = false;
    for (VertexId x : ip.vertices) {
        if (x == wu || x == wd) continue;
        has_up |= is_cls(g, x, VertexClass::UpFork);
        has_down |= is_cls(g, x, VertexClass::DownFork);
    }
    return has_up && has_down ? CaseTag::B2_I : CaseTag::B2_II;
}

SpliceResult splice_b1(const ReebGraph& g, VertexId v, VertexId w) {
    require_vertex(g, v);
    require_vertex(g, w);
    if (g.deg(v) != 1) fail(ErrorCode::WrongCase, "splice vertex is not an extremum");
    bool is_min = g.indeg(v) == 0;
    EdgeId ev = is_min ? g.out(v)[0] : g.in(v)[0];
    if (g.other_end(ev, v) != w) fail(ErrorCode::WrongCase, "w is not the neighbour of v");
    bool fits = is_min ? is_cls(g, w, VertexClass::DownFork) : is_cls(g, w, VertexClass::UpFork);
    if (!fits) fail(ErrorCode::WrongCase, "leaf and fork do not form a one-strand splice");
    auto comps = components_without(g, {w});
    if (comps.size() != 3) fail(ErrorCode::WrongCase, "fork does not separate the graph");

    const auto& pair = is_min ? g.out(w) : g.in(w);
    auto far = [&](EdgeId e) { return g.other_end(e, w); };
    const auto* c0 = component_of(comps, far(pair[0]));
    const auto* c1 = component_of(comps, far(pair[1]));
    std::set<EdgeId> e0 = internal_edges(g, *c0), e1 = internal_edges(g, *c1);
    // Reflect the smaller side; ties go to the side reached by the smaller edge id.
    bool first = e0.size() <= e1.size();
    EdgeId ea = first ? pair[0] : pair[1], eb = first ? pair[1] : pair[0];
    const auto& flip = first ? e0 : e1;
    VertexId u1 = far(ea), u2 = far(eb);

    ReebGraph r = g;
    r.remove_edge(ev);
    r.remove_edge(ea);
    r.remove_edge(eb);
    r.remove_vertex(v);
    r.remove_vertex(w);
    for (EdgeId e : flip) r.reverse_edge(e);
    EdgeId ne = g.next_edge_id();
    if (is_min) r.add_edge(ne, u1, u2);
    else r.add_edge(ne, u2, u1);
    r.clear_levels();
    if (debug_checks() && !is_good_orientation(r))
        fail(ErrorCode::PreconditionNotEstablished, "one-strand splice broke the orientation");

    StructuralOp sp;
    sp.kind = StructuralKind::SpliceB1;
    sp.remove_edges = {ne};
    sp.add_vertices = {v, w};
    sp.add_edges = {g.edge(ev), g.edge(ea), g.edge(eb)};
    StructuralOp rf;
    rf.kind = StructuralKind::ReflectComponent;
    rf.reflect.assign(flip.begin(), flip.end());
    rf.boundary = {w};
    return {r, {sp, rf}};
}

SpliceResult splice_b2(const ReebGraph& g, VertexId v, VertexId w, VertexId vp, VertexId wp) {
    for (VertexId x : {v, w, vp, wp}) require_vertex(g, x);
    if (!is_cls(g, v, VertexClass::Maximum) || !is_cls(g, vp, VertexClass::Minimum) ||
        !is_cls(g, w, VertexClass::UpFork) || !is_cls(g, wp, VertexClass::DownFork) ||
        g.src(g.in(v)[0]) != w || g.dst(g.out(vp)[0]) != wp)
        fail(ErrorCode::WrongCase, "two-strand splice needs a maximum over an UpFork and a minimum under a DownFork");

    Subgraph ip = path_set_IP(g, wp, w);
    std::vector<EdgeId> outs, ins;
    for (EdgeId e : g.out(wp))
        if (ip.edges.count(e)) outs.push_back(e);
    for (EdgeId e : g.in(w))
        if (ip.edges.count(e)) ins.push_back(e);
    if (outs.size() != 1 || ins.size() != 1)
        fail(ErrorCode::PreconditionNotEstablished, "increasing paths between the forks use both branches");
    EdgeId e1 = outs[0], e2 = ins[0];
    EdgeId ex = other_of(g.out(wp), e1), ey = other_of(g.in(w), e2);
    VertexId qx = g.dst(ex), py = g.src(ey);
    // Certificate that no increasing path joins the free branches: py can be pushed below qx.
    try {
        (void)relevel_below(g, py, qx);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::PathExists)
            fail(ErrorCode::PreconditionNotEstablished, "free branches are joined by an increasing path");
        throw;
    }

    std::set<VertexId> K = ip.vertices;
    K.erase(w);
    K.erase(wp);
    if (!K.empty()) {
        auto comps = components_without(g, {w, wp});
        const auto* c = component_of(comps, g.dst(e1));
        if (!c || *c != K) fail(ErrorCode::PreconditionNotEstablished, "paths between the forks leak out");
    }
    std::set<EdgeId> flip = internal_edges(g, K);

    ReebGraph r = g;
    EdgeId ev = g.in(v)[0], evp = g.out(vp)[0];
    std::set<EdgeId> gone{ev, evp, e1, e2, ex, ey};
    for (EdgeId e : gone) r.remove_edge(e);
    for (VertexId x : {v, w, vp, wp}) r.remove_vertex(x);
    for (EdgeId e : flip) r.reverse_edge(e);
    EdgeId n1 = g.next_edge_id(), n2 = n1 + 1;
    StructuralOp sp;
    sp.kind = StructuralKind::SpliceB2;
    sp.add_vertices = {v, w, vp, wp};
    if (K.empty()) {
        r.add_edge(n1, py, qx);
        sp.remove_edges = {n1};
        sp.add_edges = {g.edge(evp), g.edge(ex), g.edge(e1), g.edge(ey), g.edge(ev)};
    } else {
        r.add_edge(n1, py, g.src(e2));
        r.add_edge(n2, g.dst(e1), qx);
        sp.remove_edges = {n1, n2};
        sp.add_edges = {g.edge(evp), g.edge(ex), g.edge(e1), g.edge(ey), g.edge(e2), g.edge(ev)};
    }
    r.clear_levels();
    if (!is_good_orientation(r)) fail(ErrorCode::PreconditionNotEstablished, "two-strand splice broke the orientation");

    StructuralOp rf;
    rf.kind = StructuralKind::ReflectComponent;
    rf.reflect.assign(flip.begin(), flip.end());
    rf.boundary = {w, wp};
    return {r, {sp, rf}};
}

ReductionResult eliminate_increasing_paths(const ReebGraph& g, VertexId v, VertexId vp) {
    require_vertex(g, v);
    require_vertex(g, vp);
    if (!is_cls(g, v, VertexClass::Maximum) || !is_cls(g, vp, VertexClass::Minimum))
        fail(ErrorCode::WrongCase, "expected a maximum and a minimum");
    if (!is_primitive(g)) fail(ErrorCode::PreconditionNotEstablished, "graph is not primitive");
    Tree S = tree_of(g, v), T = tree_of(g, vp);
    std::vector<EdgeId> P;
    std::set_intersection(T.slots.begin(), T.slots.end(), S.slots.begin(), S.slots.end(), std::back_inserter(P));
    if (P.empty()) fail(ErrorCode::NoConfiguration, "trees are not adjacent");
    if (P.size() == T.slots.size() || P.size() == S.slots.size())
        fail(ErrorCode::NoConfiguration, "one tree has no other neighbour");
    TraceBuilder tb(g);
    make_root_split(tb, T, P);
    make_root_split(tb, S, P);
    Trace t = tb.take();
    return {t.end, t};
}

ReebGraph relevel_below(const ReebGraph& g, VertexId yp, VertexId x) {
    require_vertex(g, yp);
    require_vertex(g, x);
    std::set<VertexId> dp = ancestors(g, yp);
    dp.insert(yp);
    if (dp.count(x)) fail(ErrorCode::PathExists, "increasing path from " + std::to_string(x) + " to " + std::to_string(yp));
    bool have = g.has_levels() && levels_valid(g);
    if (have && *g.level(yp) < *g.level(x)) return g;

    std::vector<VertexId> order;
    if (have) {
        order = g.vertex_ids();
        std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return *g.level(a) < *g.level(b); });
    } else {
        order = topological_order(g);
    }
    std::map<VertexId, Rational> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = Rational(static_cast<std::int64_t>(i));
    Rational shift(0);
    if (rank[yp] > rank[x]) shift = rank[yp] - rank[x] + Rational(1, 2);
    ReebGraph r = g;
    for (auto& [vtx, lv] : rank) r.set_level(vtx, dp.count(vtx) ? lv - shift : lv);
    return r;
}

Plan realize(const ReebGraph& target, long budget) {
    g_stats = {};
    if (!is_good_orientation(target)) fail(ErrorCode::NotGoodOrientation, "target is not a good orientation");
    long b = betti(target);
    if (b > budget)
        fail(ErrorCode::BudgetExceeded, "target needs " + std::to_string(b) + " cycles, budget is " + std::to_string(budget));
    Expansion ex = expand_high_degree(target);
    ReebGraph sm = smooth(ex.graph);
    Partial part = realize_core(sm);
    for (auto& gad : ex.record.gadgets) {
        StructuralOp op;
        op.kind = StructuralKind::CollapseGadget;
        op.gadget = gad;
        part.steps.push_back(op);
    }
    return {part.start, part.steps, target};
}

ReebGraph apply_structural(const ReebGraph& g, const StructuralOp& op) {
    ReebGraph r = g;
    switch (op.kind) {
        case StructuralKind::SpliceB1:
        case StructuralKind::SpliceB2: {
            bool one = op.kind == StructuralKind::SpliceB1;
            std::size_t nr = op.remove_edges.size();
            bool shape = one ? (nr == 1 && op.add_vertices.size() == 2 && op.add_edges.size() == 3)
                             : ((nr == 1 || nr == 2) && op.add_vertices.size() == 4 && op.add_edges.size() == 4 + nr);
            if (!shape) fail(ErrorCode::SchemaError, std::string(to_string(op.kind)) + " has the wrong shape");
            std::set<VertexId> touched;
            for (EdgeId e : op.remove_edges) {
                if (!r.has_edge(e)) fail(ErrorCode::SiteStale, "splice removes missing edge " + std::to_string(e));
                touched.insert(r.src(e));
                touched.insert(r.dst(e));
                r.remove_edge(e);
            }
            for (VertexId v : op.add_vertices) {
                if (r.has_vertex(v)) fail(ErrorCode::SiteStale, "splice adds existing vertex " + std::to_string(v));
                r.add_vertex(v);
            }
            std::set<VertexId> ends;
            for (auto& e : op.add_edges) {
                if (r.has_edge(e.id)) fail(ErrorCode::SiteStale, "splice adds existing edge " + std::to_string(e.id));
                if (!r.has_vertex(e.src) || !r.has_vertex(e.dst))
                    fail(ErrorCode::SiteStale, "splice edge " + std::to_string(e.id) + " has a missing endpoint");
                r.add_edge(e.id, e.src, e.dst);
                ends.insert(e.src);
                ends.insert(e.dst);
            }
            for (VertexId v : touched)
                if (!ends.count(v)) fail(ErrorCode::SiteStale, "splice leaves vertex " + std::to_string(v) + " short");
            if (!is_connected(r)) fail(ErrorCode::Disconnected, "splice disconnects the graph");
            if (betti(r) != betti(g)) fail(ErrorCode::SiteStale, "splice changes the cycle rank");
            break;
        }
        case StructuralKind::ReflectComponent: {
            std::set<VertexId> bound(op.boundary.begin(), op.boundary.end());
            for (VertexId v : bound)
                if (!r.has_vertex(v)) fail(ErrorCode::SiteStale, "missing boundary vertex " + std::to_string(v));
            if (op.reflect.empty()) break;
            for (EdgeId e : op.reflect)
                if (!r.has_edge(e)) fail(ErrorCode::SiteStale, "reflect names missing edge " + std::to_string(e));
            auto comps = components_without(r, bound);
            const auto* c = component_of(comps, r.src(op.reflect[0]));
            std::set<EdgeId> listed(op.reflect.begin(), op.reflect.end());
            if (!c || internal_edges(r, *c) != listed)
                fail(ErrorCode::PreconditionNotEstablished, "reflected edges are not one full component");
            for (EdgeId e : listed) r.reverse_edge(e);
            break;
        }
        case StructuralKind::CollapseGadget:
            r = contract_gadget(r, op.gadget);
            break;
    }
    r.clear_levels();
    return r;
}

ReebGraph replay_plan(const Plan& p) {
    ReebGraph g = p.start;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        try {
            if (auto m = std::get_if<MoveInstance>(&p.steps[i])) {
                if (!two_sided(m->kind) && m->direction == Direction::Reverse)
                    fail(ErrorCode::IllegalDirection, std::string(to_string(m->kind)) + " cannot run in reverse in a plan");
                g = apply(g, *m);
            } else {
                g = apply_structural(g, std::get<StructuralOp>(p.steps[i]));
            }
        } catch (const Error& e) {
            throw Error(e.code(), "step " + std::to_string(i) + ": " + e.what(), i);
        }
    }
    return g;
}

VerifyResult verify_plan(const Plan& p) {
    VerifyResult res;
    try {
        if (!is_initial_form(p.start)) {
            res.code = ErrorCode::StartNotInitial;
            res.message = "plan does not start from an initial graph";
            return res;
        }
        ReebGraph g = replay_plan(p);
        if (!is_good_orientation(g)) {
            res.code = ErrorCode::NotGoodOrientation;
            res.message = "plan ends in a graph without a good orientation";
            return res;
        }
        if (!is_good_orientation(p.target) || !iso_oriented(smooth(g), smooth(p.target))) {
            res.code = ErrorCode::FinalMismatch;
            res.message = "plan does not end at the target";
            return res;
        }
    } catch (const Error& e) {
        res.step = e.step();
        res.code = e.code();
        res.message = e.what();
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace reeb
