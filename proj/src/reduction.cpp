#include "reeb/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "reeb/core.hpp"

namespace reeb {

namespace {

using VC = VertexClass;

void require_input(const ReebGraph& g) {
    if (!is_good_orientation(g)) fail(ErrorCode::NotGoodOrientation, "input has no good orientation");
    if (g.max_degree() > 3) fail(ErrorCode::UnsupportedDegree, "input has a vertex of degree above 3");
}

MoveInstance mv(MoveKind k, std::vector<VertexId> v, std::vector<EdgeId> e, std::array<int, 3> sigma = {1, 2, 3}) {
    MoveInstance m;
    m.kind = k;
    m.v = std::move(v);
    m.e = std::move(e);
    m.sigma = sigma;
    return m;
}

EdgeId other_of(const std::vector<EdgeId>& pair, EdgeId e) { return pair[0] == e ? pair[1] : pair[0]; }

// For every vertex, the extrema it can reach going down (up = false) or up (up = true).
std::map<VertexId, std::set<VertexId>> extremum_sets(const ReebGraph& g, bool up) {
    auto order = topological_order(g);
    if (up) std::reverse(order.begin(), order.end());
    std::map<VertexId, std::set<VertexId>> sets;
    for (VertexId v : order) {
        auto& s = sets[v];
        const auto& feeders = up ? g.out(v) : g.in(v);
        if (feeders.empty()) s.insert(v);
        for (EdgeId e : feeders) {
            const auto& t = sets[up ? g.dst(e) : g.src(e)];
            s.insert(t.begin(), t.end());
        }
    }
    return sets;
}

// Merges two minima regions at the lowest joining UpFork: descend it into region 1 then cancel.
void cancel_one_minimum(TraceBuilder& tb) {
    const ReebGraph& g0 = tb.graph();
    auto sets = extremum_sets(g0, false);
    VertexId v = -1;
    for (VertexId x : topological_order(g0)) {
        if (sets[x].size() >= 2) {
            v = x;
            break;
        }
    }
    auto ins = g0.in(v);
    VertexId ma = *sets[g0.src(ins[0])].begin(), mb = *sets[g0.src(ins[1])].begin();
    // side 1 descends toward the smaller minimum id; e2 stays fixed throughout
    const EdgeId e2 = ma < mb ? ins[1] : ins[0];
    for (;;) {
        const ReebGraph& g = tb.graph();
        EdgeId side = other_of(g.in(v), e2);
        VertexId p = g.src(side);
        switch (classify(g, p)) {
            case VC::Regular: tb.push(mv(MoveKind::M2, {p, v}, {side})); break;
            case VC::DownFork: tb.push(mv(MoveKind::M6, {p, v}, {side})); break;
            case VC::UpFork: tb.push(mv(MoveKind::M4, {v, p}, {side}, {2, 1, 3})); break;
            case VC::Minimum: tb.push(mv(MoveKind::M8, {p, v}, {side})); return;
            case VC::Maximum: fail(ErrorCode::NotGoodOrientation, "maximum below an UpFork");
        }
    }
}

void cancel_one_maximum(TraceBuilder& tb) {
    const ReebGraph& g0 = tb.graph();
    auto sets = extremum_sets(g0, true);
    auto order = topological_order(g0);
    std::reverse(order.begin(), order.end());
    VertexId v = -1;
    for (VertexId x : order) {
        if (sets[x].size() >= 2) {
            v = x;
            break;
        }
    }
    auto outs = g0.out(v);
    VertexId ma = *sets[g0.dst(outs[0])].begin(), mb = *sets[g0.dst(outs[1])].begin();
    const EdgeId e2 = ma < mb ? outs[1] : outs[0];
    for (;;) {
        const ReebGraph& g = tb.graph();
        EdgeId side = other_of(g.out(v), e2);
        VertexId q = g.dst(side);
        switch (classify(g, q)) {
            case VC::Regular: tb.push(mv(MoveKind::M3, {v, q}, {side})); break;
            case VC::UpFork: tb.push(mv(MoveKind::M6, {v, q}, {side})); break;
            case VC::DownFork: tb.push(mv(MoveKind::M5, {v, q}, {side}, {1, 3, 2})); break;
            case VC::Maximum: tb.push(mv(MoveKind::M9, {q, v}, {side})); return;
            case VC::Minimum: fail(ErrorCode::NotGoodOrientation, "minimum above a DownFork");
        }
    }
}

void one_min_max_into(TraceBuilder& tb) {
    while (degree_profile(tb.graph()).k0 >= 2) cancel_one_minimum(tb);
    while (degree_profile(tb.graph()).kn >= 2) cancel_one_maximum(tb);
}

void check_betti(const ReebGraph& before, const ReebGraph& after, long delta, const char* what) {
    if (debug_checks() && betti(after) != betti(before) + delta)
        fail(ErrorCode::PreconditionNotEstablished, std::string(what) + ": betti changed");
}

}  // namespace

ReductionResult to_one_min_max(const ReebGraph& g) {
    require_input(g);
    TraceBuilder tb(g);
    one_min_max_into(tb);
    const ReebGraph& r = tb.graph();
    if (debug_checks()) {
        auto p = degree_profile(r);
        if (p.k0 != 1 || p.kn != 1 || 2 * betti(r) != static_cast<long>(p.delta3))
            fail(ErrorCode::PreconditionNotEstablished, "to_one_min_max post-condition");
    }
    check_betti(g, r, 0, "to_one_min_max");
    ReebGraph out = r;
    return {out, tb.take()};
}

namespace {

// Parent along the unique in-edge (Regular and DownFork vertices only).
VertexId parent(const ReebGraph& g, VertexId x) { return g.src(g.in(x)[0]); }

void hoist_below(TraceBuilder& tb, VertexId top, VertexId w, VertexId v) {
    for (;;) {
        const ReebGraph& g = tb.graph();
        // walk down from w through Regulars to the nearest DownFork
        EdgeId chain = g.in(w)[0];
        VertexId u = g.src(chain);
        while (u != top && classify(g, u) == VC::Regular) {
            chain = g.in(u)[0];
            u = g.src(chain);
        }
        if (u == top) return;
        // lift u up to w past the Regulars in between
        while (tb.graph().dst(chain) != w) {
            const ReebGraph& h = tb.graph();
            VertexId r = h.dst(chain);
            EdgeId above = h.out(r)[0];
            tb.push(mv(MoveKind::M3, {u, r}, {chain}));
            chain = above;
        }
        const ReebGraph& h = tb.graph();
        auto bead = h.out(w);
        // w keeps bead[0]; u takes bead[1] and its own strand, then passes over v
        tb.push(mv(MoveKind::M5, {u, w}, {chain}, {2, 3, 1}));
        tb.push(mv(MoveKind::M6, {u, v}, {bead[1]}));
    }
}

}  // namespace

ReductionResult canonicalize(const ReebGraph& g) {
    require_input(g);
    TraceBuilder tb(g);
    one_min_max_into(tb);
    VertexId top = -1;
    for (const auto& [x, d] : tb.graph().vertices()) {
        if (d.in.empty()) top = x;
    }
    for (;;) {
        const ReebGraph& g0 = tb.graph();
        auto above = descendants(g0, top);
        VertexId v = -1;
        for (VertexId x : topological_order(g0)) {
            if (above.count(x) && try_classify(g0, x) == VC::UpFork) {
                v = x;
                break;
            }
        }
        if (v < 0) break;
        // lowest common ancestor of the two tails in the out-tree below v
        auto ins = g0.in(v);
        VertexId p1 = g0.src(ins[0]), p2 = g0.src(ins[1]);
        std::set<VertexId> path1;
        for (VertexId x = p1; x != top; x = parent(g0, x)) path1.insert(x);
        VertexId w = p2;
        while (!path1.count(w)) w = parent(g0, w);
        // bring v down onto w
        for (;;) {
            const ReebGraph& g1 = tb.graph();
            auto vin = g1.in(v);
            EdgeId side = g1.src(vin[0]) != w ? vin[0] : vin[1];
            VertexId p = g1.src(side);
            if (p == w) break;
            if (classify(g1, p) == VC::Regular)
                tb.push(mv(MoveKind::M2, {p, v}, {side}));
            else
                tb.push(mv(MoveKind::M6, {p, v}, {side}));
        }
        hoist_below(tb, top, w, v);
        top = v;
    }
    check_betti(g, tb.graph(), 0, "canonicalize");
    if (debug_checks() && !is_canonical_form(tb.graph()))
        fail(ErrorCode::PreconditionNotEstablished, "canonicalize post-condition");
    ReebGraph out = tb.graph();
    return {out, tb.take()};
}

ReductionResult drop_cycles(const ReebGraph& g, long k) {
    if (!is_canonical_form(g)) fail(ErrorCode::PreconditionNotEstablished, "drop_cycles needs a canonical form");
    long b = betti(g);
    if (k < 0 || k > b) fail(ErrorCode::TargetTooLarge, "target betti " + std::to_string(k) + " outside [0, " + std::to_string(b) + "]");
    TraceBuilder tb(g);
    for (long i = k; i < b; ++i) {
        const ReebGraph& h = tb.graph();
        auto sites = match_sites(h, MoveKind::M7, Direction::Forward);
        auto order = topological_order(h);
        std::map<VertexId, std::size_t> rank;
        for (std::size_t j = 0; j < order.size(); ++j) rank[order[j]] = j;
        auto best = std::max_element(sites.begin(), sites.end(),
                                     [&](const MoveInstance& a, const MoveInstance& c) { return rank[a.v[1]] < rank[c.v[1]]; });
        tb.push(*best);
    }
    ReebGraph out = tb.graph();
    return {out, tb.take()};
}

ReductionResult primitivize(const ReebGraph& g) {
    require_input(g);
    TraceBuilder tb(g);
    for (;;) {
        const ReebGraph& h = tb.graph();
        std::optional<MoveInstance> pick;
        for (VertexId u : topological_order(h)) {
            if (try_classify(h, u) != VC::UpFork) continue;
            EdgeId s = h.out(u)[0];
            VertexId d = h.dst(s);
            if (try_classify(h, d) != VC::DownFork) continue;
            MoveInstance m = mv(MoveKind::M6, {u, d}, {s, h.in(u)[0], h.out(d)[0]});
            m.direction = Direction::Reverse;
            m.planning = true;
            pick = m;
            break;
        }
        if (!pick) break;
        tb.push(*pick);
    }
    if (!is_primitive(tb.graph()))
        fail(ErrorCode::NotSmoothed, "Regular vertices separate an UpFork from a DownFork above it");
    check_betti(g, tb.graph(), 0, "primitivize");
    ReebGraph out = tb.graph();
    return {out, tb.take()};
}

Expansion expand_high_degree(const ReebGraph& g) {
    for (const auto& [v, d] : g.vertices()) {
        std::size_t deg = d.in.size() + d.out.size();
        if (deg == 0 || (deg >= 2 && (d.in.empty() || d.out.empty())))
            fail(ErrorCode::BadVertex, "vertex " + std::to_string(v) + " cannot carry a good orientation");
    }
    Expansion ex{g, {}};
    ReebGraph& r = ex.graph;
    VertexId next_v = g.next_vertex_id();
    EdgeId next_e = g.next_edge_id();
    for (VertexId v : g.vertex_ids()) {
        std::size_t a = g.indeg(v), b = g.outdeg(v);
        if (a + b < 4) continue;
        auto ins = g.in(v);
        auto outs = g.out(v);
        Gadget gad;
        gad.vertex = v;
        const std::size_t k = a + b - 2;
        gad.chain.push_back(v);
        for (std::size_t i = 1; i < k; ++i) {
            r.add_vertex(next_v);
            gad.chain.push_back(next_v++);
        }
        for (std::size_t i = 0; i + 1 < k; ++i) {
            r.add_edge(next_e, gad.chain[i], gad.chain[i + 1]);
            gad.internal.push_back(next_e++);
        }
        // DownForks chain[0 .. b-2] each shed one extra out-edge; UpForks chain[b-1 ..] each take one extra in-edge.
        for (std::size_t i = 1; i < b; ++i) r.set_src(outs[i], gad.chain[i - 1]);
        for (std::size_t j = 1; j < a; ++j) r.set_dst(ins[j], gad.chain[b - 2 + j]);
        r.set_src(outs[0], gad.chain[k - 1]);
        ex.record.gadgets.push_back(std::move(gad));
    }
    return ex;
}

ReebGraph contract_gadget(const ReebGraph& g, const Gadget& gad) {
    if (gad.chain.empty() || gad.internal.size() + 1 != gad.chain.size())
        fail(ErrorCode::GadgetBroken, "malformed gadget record");
    for (VertexId c : gad.chain) {
        if (!g.has_vertex(c)) fail(ErrorCode::GadgetBroken, "gadget vertex " + std::to_string(c) + " missing");
    }
    for (std::size_t i = 0; i < gad.internal.size(); ++i) {
        EdgeId e = gad.internal[i];
        if (!g.has_edge(e) || g.src(e) != gad.chain[i] || g.dst(e) != gad.chain[i + 1])
            fail(ErrorCode::GadgetBroken, "gadget edge " + std::to_string(e) + " missing or moved");
    }
    ReebGraph r = g;
    for (EdgeId e : gad.internal) r.remove_edge(e);
    const VertexId keep = gad.chain[0];
    for (std::size_t i = 1; i < gad.chain.size(); ++i) {
        VertexId c = gad.chain[i];
        for (EdgeId e : std::vector<EdgeId>(r.in(c))) r.set_dst(e, keep);
        for (EdgeId e : std::vector<EdgeId>(r.out(c))) r.set_src(e, keep);
        r.remove_vertex(c);
    }
    if (keep != gad.vertex) {
        fail(ErrorCode::GadgetBroken, "gadget does not start at its vertex");
    }
    return r;
}

ReebGraph contract_gadgets(const ReebGraph& g, const ExpansionRecord& record) {
    ReebGraph r = g;
    for (auto it = record.gadgets.rbegin(); it != record.gadgets.rend(); ++it) r = contract_gadget(r, *it);
    return r;
}

}  // namespace reeb
