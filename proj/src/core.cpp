#include "reeb/core.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <queue>

namespace reeb {

const char* to_string(VertexClass c) {
    switch (c) {
        case VertexClass::Minimum: return "Minimum";
        case VertexClass::Maximum: return "Maximum";
        case VertexClass::UpFork: return "UpFork";
        case VertexClass::DownFork: return "DownFork";
        case VertexClass::Regular: return "Regular";
    }
    return "?";
}

bool is_connected(const ReebGraph& g) {
    if (g.vertex_count() == 0) return false;
    return components_without(g, {}).size() == 1;
}

std::vector<std::set<VertexId>> components_without(const ReebGraph& g, const std::set<VertexId>& removed) {
    std::vector<std::set<VertexId>> comps;
    std::set<VertexId> seen(removed);
    for (const auto& [start, d] : g.vertices()) {
        if (seen.count(start)) continue;
        std::set<VertexId> comp;
        std::deque<VertexId> q{start};
        seen.insert(start);
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop_front();
            comp.insert(x);
            auto visit = [&](VertexId y) {
                if (seen.insert(y).second) q.push_back(y);
            };
            for (EdgeId e : g.out(x)) visit(g.dst(e));
            for (EdgeId e : g.in(x)) visit(g.src(e));
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<VertexId> topological_order(const ReebGraph& g) {
    std::map<VertexId, std::size_t> indeg;
    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (const auto& [v, d] : g.vertices()) {
        indeg[v] = d.in.size();
        if (d.in.empty()) ready.push(v);
    }
    std::vector<VertexId> order;
    order.reserve(g.vertex_count());
    while (!ready.empty()) {
        VertexId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (EdgeId e : g.out(v)) {
            if (--indeg[g.dst(e)] == 0) ready.push(g.dst(e));
        }
    }
    if (order.size() != g.vertex_count()) fail(ErrorCode::NotGoodOrientation, "directed cycle");
    return order;
}

bool is_acyclic(const ReebGraph& g) {
    try {
        topological_order(g);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool is_good_orientation(const ReebGraph& g) {
    if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
    if (g.edge_count() == 0) return false;
    for (const auto& [e, ed] : g.edges()) {
        if (ed.src == ed.dst) return false;
    }
    for (const auto& [v, d] : g.vertices()) {
        if (d.in.size() + d.out.size() >= 2 && (d.in.empty() || d.out.empty())) return false;
    }
    return is_acyclic(g);
}

ReebGraph synthesize_levels(const ReebGraph& g) {
    if (!is_good_orientation(g)) fail(ErrorCode::NotGoodOrientation, "no good orientation");
    ReebGraph r = g;
    auto order = topological_order(g);
    for (std::size_t i = 0; i < order.size(); ++i) r.set_level(order[i], Rational(static_cast<std::int64_t>(i)));
    return r;
}

bool levels_valid(const ReebGraph& g) {
    if (!g.has_levels()) return false;
    std::set<Rational> seen;
    for (const auto& [v, d] : g.vertices()) {
        if (!seen.insert(*d.level).second) return false;
    }
    for (const auto& [e, ed] : g.edges()) {
        if (!(*g.level(ed.src) < *g.level(ed.dst))) return false;
    }
    return true;
}

long betti(const ReebGraph& g) {
    if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
    return static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) + 1;
}

std::optional<VertexClass> try_classify(const ReebGraph& g, VertexId v) {
    std::size_t i = g.indeg(v), o = g.outdeg(v);
    if (i + o == 1) return o == 1 ? VertexClass::Minimum : VertexClass::Maximum;
    if (i == 1 && o == 1) return VertexClass::Regular;
    if (i == 2 && o == 1) return VertexClass::UpFork;
    if (i == 1 && o == 2) return VertexClass::DownFork;
    return std::nullopt;
}

VertexClass classify(const ReebGraph& g, VertexId v) {
    std::size_t d = g.deg(v);
    if (d == 0 || d >= 4) fail(ErrorCode::UnsupportedDegree, "vertex " + std::to_string(v) + " has degree " + std::to_string(d));
    auto c = try_classify(g, v);
    if (!c) fail(ErrorCode::NotGoodOrientation, "vertex " + std::to_string(v) + " is an interior extremum");
    return *c;
}

DegreeProfile degree_profile(const ReebGraph& g) {
    DegreeProfile p;
    for (const auto& [v, d] : g.vertices()) {
        std::size_t deg = d.in.size() + d.out.size();
        if (deg == 1) (d.out.size() == 1 ? p.k0 : p.kn)++;
        if (deg == 2) p.delta2++;
        if (deg == 3) {
            p.delta3++;
            if (d.in.size() == 2) p.delta3_in++;
            if (d.out.size() == 2) p.delta3_out++;
        }
    }
    return p;
}

namespace {

// Cycle rank by union-find: the number of edges closing an undirected cycle.
long cycle_rank(const ReebGraph& g) {
    std::map<VertexId, VertexId> parent;
    for (const auto& [v, d] : g.vertices()) parent[v] = v;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    long closing = 0;
    for (const auto& [e, ed] : g.edges()) {
        VertexId a = find(ed.src), b = find(ed.dst);
        if (a == b)
            ++closing;
        else
            parent[a] = b;
    }
    return closing;
}

}  // namespace

bool counting_identities(const ReebGraph& g) {
    if (g.max_degree() > 3) fail(ErrorCode::UnsupportedDegree, "degree above 3");
    DegreeProfile p = degree_profile(g);
    long b = cycle_rank(g);
    long k0 = static_cast<long>(p.k0), kn = static_cast<long>(p.kn);
    bool first = 2 * b == -(k0 + kn) + static_cast<long>(p.delta3) + 2;
    bool second = static_cast<long>(p.delta3_in) - k0 + 1 == b && b == static_cast<long>(p.delta3_out) - kn + 1;
    return first && second;
}

std::set<VertexId> descendants(const ReebGraph& g, VertexId v) {
    std::set<VertexId> seen;
    std::deque<VertexId> q{v};
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop_front();
        for (EdgeId e : g.out(x)) {
            if (seen.insert(g.dst(e)).second) q.push_back(g.dst(e));
        }
    }
    return seen;
}

std::set<VertexId> ancestors(const ReebGraph& g, VertexId v) {
    std::set<VertexId> seen;
    std::deque<VertexId> q{v};
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop_front();
        for (EdgeId e : g.in(x)) {
            if (seen.insert(g.src(e)).second) q.push_back(g.src(e));
        }
    }
    return seen;
}

bool is_below(const ReebGraph& g, VertexId v, VertexId w) {
    if (v == w) return false;
    return descendants(g, v).count(w) != 0;
}

Subgraph path_set_IP(const ReebGraph& g, VertexId p, VertexId q) {
    Subgraph s;
    if (p == q) {
        s.vertices.insert(p);
        return s;
    }
    auto down = descendants(g, p);
    if (!down.count(q)) return s;
    auto up = ancestors(g, q);
    down.insert(p);
    up.insert(q);
    for (VertexId x : down) {
        if (up.count(x)) s.vertices.insert(x);
    }
    for (const auto& [e, ed] : g.edges()) {
        if (s.vertices.count(ed.src) && s.vertices.count(ed.dst)) s.edges.insert(e);
    }
    return s;
}

Subgraph path_set_DP(const ReebGraph& g, VertexId p, VertexId q) { return path_set_IP(g, q, p); }

Subgraph path_set_IP_from(const ReebGraph& g, VertexId p) {
    Subgraph s;
    s.vertices = descendants(g, p);
    s.vertices.insert(p);
    for (const auto& [e, ed] : g.edges()) {
        if (s.vertices.count(ed.src)) s.edges.insert(e);
    }
    return s;
}

Subgraph path_set_DP_from(const ReebGraph& g, VertexId p) {
    Subgraph s;
    s.vertices = ancestors(g, p);
    s.vertices.insert(p);
    for (const auto& [e, ed] : g.edges()) {
        if (s.vertices.count(ed.dst)) s.edges.insert(e);
    }
    return s;
}

std::pair<ReebGraph, VertexId> subdivide(const ReebGraph& g, EdgeId e, bool marker) {
    ReebGraph r = g;
    VertexId m = r.next_vertex_id();
    EdgeId upper = r.next_edge_id();
    VertexId top = r.dst(e);
    r.add_vertex(m, marker);
    r.set_dst(e, m);
    r.add_edge(upper, m, top);
    if (g.has_levels()) {
        // Midpoint keeps the level map valid.
        r.set_level(m, (*g.level(g.src(e)) + *g.level(top)) / 2);
    }
    return {r, m};
}

namespace {

// Vertex-disjoint path count from v to degree-1 vertices, following out-edges when `up` holds and in-edges
// otherwise. Edmonds-Karp on the split-vertex network, capped at 2.
int disjoint_paths_to_extrema(const ReebGraph& g, VertexId v, bool up) {
    auto ids = g.vertex_ids();
    std::map<VertexId, int> idx;
    for (std::size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<int>(i);
    const int n = static_cast<int>(ids.size());
    const int N = 2 * n + 1;
    const int sink = 2 * n;
    std::vector<std::map<int, int>> cap(N);
    auto arc = [&](int a, int b, int c) {
        cap[a][b] += c;
        cap[b][a] += 0;
    };
    for (int i = 0; i < n; ++i) arc(2 * i, 2 * i + 1, 1);
    for (const auto& [e, ed] : g.edges()) {
        int a = idx[ed.src], b = idx[ed.dst];
        if (!up) std::swap(a, b);
        arc(2 * a + 1, 2 * b, 1);
    }
    for (VertexId x : ids) {
        if (x != v && g.deg(x) == 1) arc(2 * idx[x] + 1, sink, 1);
    }
    const int source = 2 * idx[v] + 1;
    int flow = 0;
    while (flow < 2) {
        std::vector<int> prev(N, -1);
        prev[source] = source;
        std::deque<int> q{source};
        while (!q.empty() && prev[sink] < 0) {
            int x = q.front();
            q.pop_front();
            for (const auto& [y, c] : cap[x]) {
                if (c > 0 && prev[y] < 0) {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        if (prev[sink] < 0) break;
        for (int y = sink; y != source; y = prev[y]) {
            cap[prev[y]][y] -= 1;
            cap[y][prev[y]] += 1;
        }
        ++flow;
    }
    return flow;
}

}  // namespace

bool is_branching(const ReebGraph& g, VertexId v) {
    auto c = try_classify(g, v);
    if (g.deg(v) != 3 || !c || (*c != VertexClass::UpFork && *c != VertexClass::DownFork))
        fail(ErrorCode::NotAFork, "vertex " + std::to_string(v) + " is not a fork");
    return disjoint_paths_to_extrema(g, v, *c == VertexClass::DownFork) >= 2;
}

bool is_primitive(const ReebGraph& g) {
    if (g.max_degree() > 3) fail(ErrorCode::UnsupportedDegree, "degree above 3");
    for (const auto& [u, d] : g.vertices()) {
        if (try_classify(g, u) != VertexClass::UpFork) continue;
        for (VertexId x : descendants(g, u)) {
            if (try_classify(g, x) == VertexClass::DownFork) return false;
        }
    }
    return true;
}

bool ordered_implies_tree_check(const ReebGraph& g) {
    bool ordered = true;
    for (const auto& [d, dd] : g.vertices()) {
        if (try_classify(g, d) != VertexClass::DownFork) continue;
        for (VertexId x : descendants(g, d)) {
            if (try_classify(g, x) == VertexClass::UpFork) ordered = false;
        }
    }
    return !ordered || betti(g) == 0;
}

ReebGraph smooth(const ReebGraph& g) {
    ReebGraph r = g;
    for (VertexId v : g.vertex_ids()) {
        if (r.indeg(v) != 1 || r.outdeg(v) != 1) continue;
        EdgeId a = r.in(v)[0], b = r.out(v)[0];
        VertexId top = r.dst(b);
        if (r.src(a) == top) continue;
        r.remove_edge(b);
        r.set_dst(a, top);
        r.remove_vertex(v);
    }
    return r;
}

bool is_smoothed(const ReebGraph& g) {
    for (const auto& [v, d] : g.vertices()) {
        if (d.in.size() == 1 && d.out.size() == 1) return false;
    }
    return true;
}

namespace {

struct Dense {
    std::vector<VertexId> ids;
    std::vector<std::vector<int>> mult;  // mult[a][b] = number of edges a -> b
};

Dense densify(const ReebGraph& g) {
    Dense d;
    d.ids = g.vertex_ids();
    std::map<VertexId, int> idx;
    for (std::size_t i = 0; i < d.ids.size(); ++i) idx[d.ids[i]] = static_cast<int>(i);
    d.mult.assign(d.ids.size(), std::vector<int>(d.ids.size(), 0));
    for (const auto& [e, ed] : g.edges()) d.mult[idx[ed.src]][idx[ed.dst]]++;
    return d;
}

// Colour refinement on the disjoint union of both graphs so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> joint_colours(const Dense& a, const Dense& b) {
    const int na = static_cast<int>(a.ids.size());
    const int n = na + static_cast<int>(b.ids.size());
    auto m = [&](int x, int y) -> int {
        if (x < na && y < na) return a.mult[x][y];
        if (x >= na && y >= na) return b.mult[x - na][y - na];
        return 0;
    };
    std::vector<int> col(n, 0);
    for (int round = 0; round <= n; ++round) {
        std::vector<std::vector<int>> sig(n);
        for (int x = 0; x < n; ++x) {
            std::vector<std::pair<int, int>> outs, ins;
            for (int y = 0; y < n; ++y) {
                if (m(x, y)) outs.push_back({col[y], m(x, y)});
                if (m(y, x)) ins.push_back({col[y], m(y, x)});
            }
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            sig[x].push_back(col[x]);
            for (auto [c, k] : outs) sig[x].insert(sig[x].end(), {c, k});
            sig[x].push_back(-1);
            for (auto [c, k] : ins) sig[x].insert(sig[x].end(), {c, k});
        }
        std::vector<std::vector<int>> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> next(n);
        for (int x = 0; x < n; ++x) next[x] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[x]) - uniq.begin());
        bool stable = std::set<int>(next.begin(), next.end()).size() == std::set<int>(col.begin(), col.end()).size();
        col = next;
        if (stable && round > 0) break;
    }
    return {std::vector<int>(col.begin(), col.begin() + na), std::vector<int>(col.begin() + na, col.end())};
}

}  // namespace

std::optional<std::map<VertexId, VertexId>> iso_oriented(const ReebGraph& g1, const ReebGraph& g2) {
    if (!is_smoothed(g1) || !is_smoothed(g2)) fail(ErrorCode::NotSmoothed, "iso_oriented needs smoothed graphs");
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;
    Dense a = densify(g1), b = densify(g2);
    auto [ca, cb] = joint_colours(a, b);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    const int n = static_cast<int>(a.ids.size());
    // Visit order: grow from the rarest colour along adjacency so each new vertex is constrained.
    std::map<int, int> freq;
    for (int c : ca) freq[c]++;
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    while (static_cast<int>(order.size()) < n) {
        int best = -1;
        auto score = [&](int x) {
            int links = 0;
            for (int y : order) links += a.mult[x][y] + a.mult[y][x];
            return std::make_tuple(links > 0 ? 0 : 1, freq[ca[x]], -links, x);
        };
        for (int x = 0; x < n; ++x) {
            if (!placed[x] && (best < 0 || score(x) < score(best))) best = x;
        }
        placed[best] = true;
        order.push_back(best);
    }
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> search = [&](std::size_t k) {
        if (k == order.size()) return true;
        int x = order[k];
        for (int y = 0; y < n; ++y) {
            if (used[y] || cb[y] != ca[x]) continue;
            bool ok = a.mult[x][x] == b.mult[y][y];
            for (std::size_t j = 0; ok && j < k; ++j) {
                int px = order[j], py = map[px];
                ok = a.mult[x][px] == b.mult[y][py] && a.mult[px][x] == b.mult[py][y];
            }
            if (!ok) continue;
            map[x] = y;
            used[y] = true;
            if (search(k + 1)) return true;
            used[y] = false;
            map[x] = -1;
        }
        return false;
    };
    if (!search(0)) return std::nullopt;
    std::map<VertexId, VertexId> result;
    for (int x = 0; x < n; ++x) result[a.ids[x]] = b.ids[map[x]];
    return result;
}

ReebGraph canonical_graph(int g) {
    ReebGraph r;
    EdgeId e = 0;
    const VertexId max = 2 * g + 1;
    for (VertexId v = 0; v <= max; ++v) r.add_vertex(v);
    if (g == 0) {
        r.add_edge(e++, 0, 1);
        return r;
    }
    r.add_edge(e++, 0, 1);
    for (int i = 1; i <= g; ++i) {
        VertexId b = 2 * i - 1, t = 2 * i;
        r.add_edge(e++, b, t);
        r.add_edge(e++, b, t);
        r.add_edge(e++, t, i == g ? max : t + 1);
    }
    return r;
}

ReebGraph initial_graph(int g) {
    if (g <= 1) return canonical_graph(g);
    ReebGraph r;
    EdgeId e = 0;
    const VertexId max = 2 * g + 1;
    for (VertexId v = 0; v <= max; ++v) r.add_vertex(v);
    auto d = [](int i) { return static_cast<VertexId>(i); };
    auto u = [g](int i) { return static_cast<VertexId>(g + i); };
    r.add_edge(e++, 0, d(1));
    for (int i = 1; i < g; ++i) r.add_edge(e++, d(i), d(i + 1));
    r.add_edge(e++, d(g), u(g));
    r.add_edge(e++, d(g), u(g));
    for (int i = g - 1; i >= 1; --i) r.add_edge(e++, u(i + 1), u(i));
    for (int i = 1; i < g; ++i) r.add_edge(e++, d(i), u(i));
    r.add_edge(e++, u(1), max);
    return r;
}

std::set<EdgeId> bridges(const ReebGraph& g) {
    std::set<EdgeId> result;
    std::map<VertexId, int> disc, low;
    int timer = 0;
    std::function<void(VertexId, EdgeId)> dfs = [&](VertexId x, EdgeId via) {
        disc[x] = low[x] = ++timer;
        auto step = [&](EdgeId e) {
            if (e == via) return;
            VertexId y = g.other_end(e, x);
            if (!disc.count(y)) {
                dfs(y, e);
                low[x] = std::min(low[x], low[y]);
                if (low[y] > disc[x]) result.insert(e);
            } else {
                low[x] = std::min(low[x], disc[y]);
            }
        };
        for (EdgeId e : g.out(x)) step(e);
        for (EdgeId e : g.in(x)) step(e);
    };
    for (const auto& [v, d] : g.vertices()) {
        if (!disc.count(v)) dfs(v, -1);
    }
    return result;
}

namespace {

bool is_plain_regular(const ReebGraph& g, VertexId v) { return g.indeg(v) == 1 && g.outdeg(v) == 1 && !g.marker(v); }

bool smoothed_iso(const ReebGraph& g, const ReebGraph& model) {
    return iso_oriented(smooth(g), model).has_value();
}

}  // namespace

bool is_canonical_form(const ReebGraph& g) {
    if (!is_good_orientation(g)) return false;
    if (!smoothed_iso(g, canonical_graph(static_cast<int>(betti(g))))) return false;
    auto br = bridges(g);
    for (const auto& [v, d] : g.vertices()) {
        if (!is_plain_regular(g, v)) continue;
        if (!br.count(d.in[0]) || !br.count(d.out[0])) return false;
    }
    return true;
}

bool is_initial_form(const ReebGraph& g) {
    if (!is_good_orientation(g)) return false;
    if (!smoothed_iso(g, initial_graph(static_cast<int>(betti(g))))) return false;
    for (const auto& [v, d] : g.vertices()) {
        if (!is_plain_regular(g, v)) continue;
        VertexId lo = v, hi = v;
        while (g.indeg(lo) == 1 && g.outdeg(lo) == 1) lo = g.src(g.in(lo)[0]);
        while (g.indeg(hi) == 1 && g.outdeg(hi) == 1) hi = g.dst(g.out(hi)[0]);
        if (g.deg(lo) != 1 && g.deg(hi) != 1) return false;
    }
    return true;
}

}  // namespace reeb
