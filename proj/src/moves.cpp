#include "reeb/moves.hpp"

#include <algorithm>
#include <sstream>

#include "reeb/core.hpp"

namespace reeb {

const char* to_string(MoveKind k) {
    switch (k) {
        case MoveKind::M1: return "M1";
        case MoveKind::M2: return "M2";
        case MoveKind::M2p: return "M2p";
        case MoveKind::M3: return "M3";
        case MoveKind::M3p: return "M3p";
        case MoveKind::M4: return "M4";
        case MoveKind::M5: return "M5";
        case MoveKind::M6: return "M6";
        case MoveKind::M7: return "M7";
        case MoveKind::M8: return "M8";
        case MoveKind::M9: return "M9";
    }
    return "?";
}

const char* to_string(Direction d) { return d == Direction::Forward ? "forward" : "reverse"; }

std::vector<MoveKind> all_move_kinds() {
    return {MoveKind::M1, MoveKind::M2, MoveKind::M2p, MoveKind::M3, MoveKind::M3p, MoveKind::M4,
            MoveKind::M5, MoveKind::M6, MoveKind::M7, MoveKind::M8, MoveKind::M9};
}

std::optional<MoveKind> move_kind_from_string(const std::string& s) {
    for (MoveKind k : all_move_kinds()) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::optional<Direction> direction_from_string(const std::string& s) {
    if (s == "forward") return Direction::Forward;
    if (s == "reverse") return Direction::Reverse;
    return std::nullopt;
}

bool two_sided(MoveKind k) {
    return k == MoveKind::M4 || k == MoveKind::M5 || k == MoveKind::M8 || k == MoveKind::M9;
}

std::string describe(const MoveInstance& m) {
    std::ostringstream os;
    os << to_string(m.kind) << ' ' << to_string(m.direction) << " v[";
    for (std::size_t i = 0; i < m.v.size(); ++i) os << (i ? "," : "") << m.v[i];
    os << "] e[";
    for (std::size_t i = 0; i < m.e.size(); ++i) os << (i ? "," : "") << m.e[i];
    os << ']';
    if (m.kind == MoveKind::M4 || m.kind == MoveKind::M5)
        os << " sigma[" << m.sigma[0] << ',' << m.sigma[1] << ',' << m.sigma[2] << ']';
    return os.str();
}

namespace {

using VC = VertexClass;

[[noreturn]] void stale(const MoveInstance& m, const std::string& why) {
    throw Error(ErrorCode::SiteStale, describe(m) + ": " + why);
}

void need(bool cond, const MoveInstance& m, const char* why) {
    if (!cond) stale(m, why);
}

bool is(const ReebGraph& g, VertexId v, VC c) { return g.has_vertex(v) && try_classify(g, v) == c; }

bool edge_is(const ReebGraph& g, EdgeId e, VertexId s, VertexId d) {
    return g.has_edge(e) && g.src(e) == s && g.dst(e) == d;
}

EdgeId other_of(const std::vector<EdgeId>& pair, EdgeId e) { return pair[0] == e ? pair[1] : pair[0]; }

bool valid_sigma(const std::array<int, 3>& s) {
    std::array<int, 3> t = s;
    std::sort(t.begin(), t.end());
    return t == std::array<int, 3>{1, 2, 3};
}

bool is_one_of(const std::vector<EdgeId>& v, EdgeId e) { return std::find(v.begin(), v.end(), e) != v.end(); }

void check_shape(const MoveInstance& m) {
    std::size_t nv = 2, ne = 1;
    bool rev = m.direction == Direction::Reverse;
    switch (m.kind) {
        case MoveKind::M2: case MoveKind::M2p: case MoveKind::M3: case MoveKind::M3p: ne = rev ? 2 : 1; break;
        case MoveKind::M6: ne = rev ? 3 : 1; break;
        case MoveKind::M7: ne = 2; break;
        case MoveKind::M8: case MoveKind::M9: ne = rev ? 3 : 1; break;
        default: break;
    }
    need(m.v.size() == nv && m.e.size() == ne, m, "wrong number of site elements");
    if (m.kind == MoveKind::M4 || m.kind == MoveKind::M5) need(valid_sigma(m.sigma), m, "sigma is not a permutation");
}

// Strand triple of a stacked pair, in the order sigma indexes into.
std::array<EdgeId, 3> m4_strands(const ReebGraph& g, VertexId up, VertexId lo, EdgeId s) {
    auto lin = g.in(lo);
    return {other_of(g.in(up), s), lin[0], lin[1]};
}

std::array<EdgeId, 3> m5_strands(const ReebGraph& g, VertexId lo, VertexId up, EdgeId s) {
    auto uout = g.out(up);
    return {uout[0], uout[1], other_of(g.out(lo), s)};
}

std::array<int, 3> sigma_with_first(int first) {
    std::array<int, 3> s{first, 0, 0};
    int k = 1;
    for (int i = 1; i <= 3; ++i)
        if (i != first) s[k++] = i;
    return s;
}

std::array<int, 3> sigma_with_last(int last) {
    std::array<int, 3> s{0, 0, last};
    int k = 0;
    for (int i = 1; i <= 3; ++i)
        if (i != last) s[k++] = i;
    return s;
}

int position(const std::array<EdgeId, 3>& a, EdgeId e) {
    for (int i = 0; i < 3; ++i)
        if (a[i] == e) return i + 1;
    return 0;
}

bool reaches(const ReebGraph& g, VertexId from, VertexId to) { return from == to || descendants(g, from).count(to); }

void check_local(const ReebGraph& g, const MoveInstance& m) {
    check_shape(m);
    const bool rev = m.direction == Direction::Reverse;
    const VertexId a = m.v[0], b = m.v[1];
    const EdgeId s = m.e[0];
    switch (m.kind) {
        case MoveKind::M1:
            need(is(g, a, VC::Regular) && is(g, b, VC::Regular) && edge_is(g, s, a, b), m, "not two stacked Regulars");
            break;
        case MoveKind::M2: case MoveKind::M2p:
            if (!rev) {
                need(is(g, a, VC::Regular) && is(g, b, VC::UpFork) && edge_is(g, s, a, b), m, "no Regular under the UpFork");
            } else {
                need(is(g, a, VC::UpFork) && is(g, b, VC::Regular) && edge_is(g, s, a, b), m, "no Regular over the UpFork");
                need(is_one_of(g.in(a), m.e[1]), m, "chosen strand is not an in-edge");
            }
            break;
        case MoveKind::M3: case MoveKind::M3p:
            if (!rev) {
                need(is(g, a, VC::DownFork) && is(g, b, VC::Regular) && edge_is(g, s, a, b), m, "no Regular over the DownFork");
            } else {
                need(is(g, a, VC::Regular) && is(g, b, VC::DownFork) && edge_is(g, s, a, b), m, "no Regular under the DownFork");
                need(is_one_of(g.out(b), m.e[1]), m, "chosen strand is not an out-edge");
            }
            break;
        case MoveKind::M4:
            need(is(g, a, VC::UpFork) && is(g, b, VC::UpFork) && edge_is(g, s, b, a), m, "not two stacked UpForks");
            break;
        case MoveKind::M5:
            need(is(g, a, VC::DownFork) && is(g, b, VC::DownFork) && edge_is(g, s, a, b), m, "not two stacked DownForks");
            break;
        case MoveKind::M6:
            if (!rev) {
                need(is(g, a, VC::DownFork) && is(g, b, VC::UpFork) && edge_is(g, s, a, b), m, "no DownFork under the UpFork");
                EdgeId D = other_of(g.out(a), s);
                EdgeId A = other_of(g.in(b), s);
                need(g.dst(D) != b, m, "forks joined by two strands");
                need(!reaches(g, g.dst(D), g.src(A)), m, "rewrite would close a directed cycle");
            } else {
                need(is(g, a, VC::UpFork) && is(g, b, VC::DownFork) && edge_is(g, s, a, b), m, "no UpFork under the DownFork");
                need(is_one_of(g.in(a), m.e[1]) && is_one_of(g.out(b), m.e[2]), m, "chosen strands do not match");
            }
            break;
        case MoveKind::M7:
            if (!rev) {
                need(is(g, a, VC::DownFork) && is(g, b, VC::UpFork), m, "not a DownFork/UpFork pair");
                need(m.e[0] != m.e[1] && edge_is(g, m.e[0], a, b) && edge_is(g, m.e[1], a, b), m, "forks not joined by two strands");
            } else {
                need(is(g, a, VC::Regular) && is(g, b, VC::Regular) && edge_is(g, s, a, b), m, "not two stacked Regulars");
                need(!g.has_edge(m.e[1]), m, "new strand id in use");
            }
            break;
        case MoveKind::M8:
            if (!rev) {
                need(is(g, a, VC::Minimum) && is(g, b, VC::UpFork) && edge_is(g, s, a, b), m, "no Minimum under an UpFork");
            } else {
                need(g.has_edge(s) && !g.has_vertex(a) && !g.has_vertex(b) && a != b, m, "bad insertion ids");
                need(!g.has_edge(m.e[1]) && !g.has_edge(m.e[2]) && m.e[1] != m.e[2], m, "bad insertion edge ids");
            }
            break;
        case MoveKind::M9:
            if (!rev) {
                need(is(g, a, VC::Maximum) && is(g, b, VC::DownFork) && edge_is(g, s, b, a), m, "no Maximum over a DownFork");
            } else {
                need(g.has_edge(s) && !g.has_vertex(a) && !g.has_vertex(b) && a != b, m, "bad insertion ids");
                need(!g.has_edge(m.e[1]) && !g.has_edge(m.e[2]) && m.e[1] != m.e[2], m, "bad insertion edge ids");
            }
            break;
    }
}

MoveInstance make(MoveKind k, Direction d, std::vector<VertexId> v, std::vector<EdgeId> e, bool planning) {
    MoveInstance m;
    m.kind = k;
    m.direction = d;
    m.v = std::move(v);
    m.e = std::move(e);
    m.planning = planning;
    return m;
}

Direction flip(Direction d) { return d == Direction::Forward ? Direction::Reverse : Direction::Forward; }

}  // namespace

void check_site(const ReebGraph& g, const MoveInstance& m) {
    if (m.direction == Direction::Reverse && !two_sided(m.kind) && !m.planning)
        throw Error(ErrorCode::IllegalDirection, describe(m) + ": one-sided move used in reverse");
    try {
        check_local(g, m);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SiteStale) throw;
        stale(m, e.what());
    }
}

Applied apply_move(const ReebGraph& g, const MoveInstance& m) {
    check_site(g, m);
    ReebGraph r = g;
    r.clear_levels();
    const bool rev = m.direction == Direction::Reverse;
    const VertexId a = m.v[0], b = m.v[1];
    const EdgeId s = m.e[0];
    MoveInstance inv;
    const Direction back = flip(m.direction);
    switch (m.kind) {
        case MoveKind::M1: {
            EdgeId below = g.in(a)[0], above = g.out(b)[0];
            r.reverse_edge(s);
            r.set_dst(below, b);
            r.set_src(above, a);
            inv = make(m.kind, back, {b, a}, {s}, m.planning);
            break;
        }
        case MoveKind::M2: case MoveKind::M2p: {
            if (!rev) {
                EdgeId below = g.in(a)[0], above = g.out(b)[0];
                r.set_dst(below, b);
                r.reverse_edge(s);
                r.set_src(above, a);
                inv = make(m.kind, back, {b, a}, {s, below}, m.planning);
            } else {
                EdgeId x = m.e[1], above = g.out(b)[0];
                r.set_dst(x, b);
                r.reverse_edge(s);
                r.set_src(above, a);
                inv = make(m.kind, back, {b, a}, {s}, m.planning);
            }
            break;
        }
        case MoveKind::M3: case MoveKind::M3p: {
            if (!rev) {
                EdgeId below = g.in(a)[0], above = g.out(b)[0];
                r.set_dst(below, b);
                r.reverse_edge(s);
                r.set_src(above, a);
                inv = make(m.kind, back, {b, a}, {s, above}, m.planning);
            } else {
                EdgeId y = m.e[1], below = g.in(a)[0];
                r.set_src(y, a);
                r.reverse_edge(s);
                r.set_dst(below, b);
                inv = make(m.kind, back, {b, a}, {s}, m.planning);
            }
            break;
        }
        case MoveKind::M4: {
            // a = upper, b = lower
            auto V = m4_strands(g, a, b, s);
            EdgeId top = V[m.sigma[0] - 1];
            EdgeId out = g.out(a)[0];
            r.set_dst(top, b);
            r.set_dst(V[m.sigma[1] - 1], a);
            r.set_dst(V[m.sigma[2] - 1], a);
            r.reverse_edge(s);
            r.set_src(out, b);
            auto W = m4_strands(r, b, a, s);
            inv = make(m.kind, back, {b, a}, {s}, m.planning);
            inv.sigma = sigma_with_first(position(W, V[0]));
            break;
        }
        case MoveKind::M5: {
            // a = lower, b = upper
            auto V = m5_strands(g, a, b, s);
            EdgeId in = g.in(a)[0];
            r.set_src(V[m.sigma[0] - 1], a);
            r.set_src(V[m.sigma[1] - 1], a);
            r.set_src(V[m.sigma[2] - 1], b);
            r.reverse_edge(s);
            r.set_dst(in, b);
            auto W = m5_strands(r, b, a, s);
            inv = make(m.kind, back, {b, a}, {s}, m.planning);
            inv.sigma = sigma_with_last(position(W, V[2]));
            break;
        }
        case MoveKind::M6: {
            if (!rev) {
                EdgeId C = g.in(a)[0], B = g.out(b)[0];
                r.set_dst(C, b);
                r.reverse_edge(s);
                r.set_src(B, a);
                inv = make(m.kind, back, {b, a}, {s, C, B}, m.planning);
            } else {
                EdgeId x = m.e[1], y = m.e[2];
                r.set_dst(x, b);
                r.reverse_edge(s);
                r.set_src(y, a);
                inv = make(m.kind, back, {b, a}, {s}, m.planning);
            }
            break;
        }
        case MoveKind::M7: {
            if (!rev) {
                EdgeId keep = m.e[0], drop = m.e[1];
                EdgeId C = g.in(a)[0], B = g.out(b)[0];
                r.remove_edge(drop);
                r.set_dst(C, b);
                r.reverse_edge(keep);
                r.set_src(B, a);
                inv = make(m.kind, back, {b, a}, {keep, drop}, m.planning);
            } else {
                EdgeId C = g.in(a)[0], B = g.out(b)[0];
                r.set_dst(C, b);
                r.reverse_edge(s);
                r.add_edge(m.e[1], b, a);
                r.set_src(B, a);
                inv = make(m.kind, back, {b, a}, {s, m.e[1]}, m.planning);
            }
            break;
        }
        case MoveKind::M8: {
            if (!rev) {
                EdgeId x = other_of(g.in(b), s), out = g.out(b)[0];
                VertexId top = g.dst(out);
                r.remove_edge(s);
                r.remove_edge(out);
                r.set_dst(x, top);
                r.remove_vertex(a);
                r.remove_vertex(b);
                inv = make(m.kind, back, {a, b}, {x, s, out}, m.planning);
            } else {
                VertexId top = g.dst(s);
                r.add_vertex(a);
                r.add_vertex(b);
                r.set_dst(s, b);
                r.add_edge(m.e[2], b, top);
                r.add_edge(m.e[1], a, b);
                inv = make(m.kind, back, {a, b}, {m.e[1]}, m.planning);
            }
            break;
        }
        case MoveKind::M9: {
            if (!rev) {
                EdgeId y = other_of(g.out(b), s), in = g.in(b)[0];
                VertexId bottom = g.src(in);
                r.remove_edge(s);
                r.remove_edge(in);
                r.set_src(y, bottom);
                r.remove_vertex(a);
                r.remove_vertex(b);
                inv = make(m.kind, back, {a, b}, {y, s, in}, m.planning);
            } else {
                VertexId bottom = g.src(s);
                r.add_vertex(a);
                r.add_vertex(b);
                r.set_src(s, b);
                r.add_edge(m.e[2], bottom, b);
                r.add_edge(m.e[1], b, a);
                inv = make(m.kind, back, {a, b}, {m.e[1]}, m.planning);
            }
            break;
        }
    }
    if (debug_checks() && is_good_orientation(g) && !is_good_orientation(r))
        throw Error(ErrorCode::NotGoodOrientation, describe(m) + ": result lost the good orientation");
    return {std::move(r), std::move(inv)};
}

ReebGraph apply(const ReebGraph& g, const MoveInstance& m) { return apply_move(g, m).graph; }

std::vector<MoveInstance> match_sites(const ReebGraph& g, MoveKind kind, Direction dir) {
    if (g.max_degree() > 3) fail(ErrorCode::UnsupportedDegree, "match_sites needs degree at most 3");
    std::vector<MoveInstance> sites;
    const bool rev = dir == Direction::Reverse;
    auto cls = [&](VertexId v) { return try_classify(g, v); };
    auto emit = [&](std::vector<VertexId> v, std::vector<EdgeId> e) {
        sites.push_back(make(kind, dir, std::move(v), std::move(e), false));
    };
    for (const auto& [s, ed] : g.edges()) {
        auto cs = cls(ed.src), cd = cls(ed.dst);
        switch (kind) {
            case MoveKind::M1:
                if (cs == VC::Regular && cd == VC::Regular) emit({ed.src, ed.dst}, {s});
                break;
            case MoveKind::M2: case MoveKind::M2p:
                if (!rev && cs == VC::Regular && cd == VC::UpFork) emit({ed.src, ed.dst}, {s});
                if (rev && cs == VC::UpFork && cd == VC::Regular)
                    for (EdgeId x : g.in(ed.src)) emit({ed.src, ed.dst}, {s, x});
                break;
            case MoveKind::M3: case MoveKind::M3p:
                if (!rev && cs == VC::DownFork && cd == VC::Regular) emit({ed.src, ed.dst}, {s});
                if (rev && cs == VC::Regular && cd == VC::DownFork)
                    for (EdgeId y : g.out(ed.dst)) emit({ed.src, ed.dst}, {s, y});
                break;
            case MoveKind::M4:
                if (cs == VC::UpFork && cd == VC::UpFork)
                    for (int f = 1; f <= 3; ++f) {
                        emit({ed.dst, ed.src}, {s});
                        sites.back().sigma = sigma_with_first(f);
                    }
                break;
            case MoveKind::M5:
                if (cs == VC::DownFork && cd == VC::DownFork)
                    for (int l = 1; l <= 3; ++l) {
                        emit({ed.src, ed.dst}, {s});
                        sites.back().sigma = sigma_with_last(l);
                    }
                break;
            case MoveKind::M6:
                if (!rev && cs == VC::DownFork && cd == VC::UpFork) {
                    MoveInstance m = make(kind, dir, {ed.src, ed.dst}, {s}, false);
                    try {
                        check_local(g, m);
                        sites.push_back(m);
                    } catch (const Error&) {
                    }
                }
                if (rev && cs == VC::UpFork && cd == VC::DownFork)
                    for (EdgeId x : g.in(ed.src))
                        for (EdgeId y : g.out(ed.dst)) emit({ed.src, ed.dst}, {s, x, y});
                break;
            case MoveKind::M7:
                if (!rev && cs == VC::DownFork && cd == VC::UpFork) {
                    auto outs = g.out(ed.src);
                    if (g.dst(outs[0]) == g.dst(outs[1]) && outs[0] == s) emit({ed.src, ed.dst}, {outs[0], outs[1]});
                }
                if (rev && cs == VC::Regular && cd == VC::Regular) emit({ed.src, ed.dst}, {s, g.next_edge_id()});
                break;
            case MoveKind::M8:
                if (!rev && cs == VC::Minimum && cd == VC::UpFork) emit({ed.src, ed.dst}, {s});
                if (rev) {
                    VertexId nv = g.next_vertex_id();
                    EdgeId ne = g.next_edge_id();
                    emit({nv, nv + 1}, {s, ne, ne + 1});
                }
                break;
            case MoveKind::M9:
                if (!rev && cs == VC::DownFork && cd == VC::Maximum) emit({ed.dst, ed.src}, {s});
                if (rev) {
                    VertexId nv = g.next_vertex_id();
                    EdgeId ne = g.next_edge_id();
                    emit({nv, nv + 1}, {s, ne, ne + 1});
                }
                break;
        }
    }
    return sites;
}

void TraceBuilder::push(const MoveInstance& m) {
    auto r = apply_move(trace_.end, m);
    trace_.steps.push_back(m);
    trace_.end = std::move(r.graph);
}

ReebGraph replay(const Trace& t) {
    ReebGraph g = t.start;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        try {
            g = apply(g, t.steps[i]);
        } catch (const Error& e) {
            throw Error(e.code(), "step " + std::to_string(i) + ": " + e.what(), i);
        }
    }
    return g;
}

Trace invert(const Trace& t) {
    std::vector<MoveInstance> inv;
    inv.reserve(t.steps.size());
    ReebGraph g = t.start;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const MoveInstance& m = t.steps[i];
        if (!two_sided(m.kind) && !m.planning)
            throw Error(ErrorCode::NotInvertible, "step " + std::to_string(i) + ": " + describe(m) + " is one-sided", i);
        try {
            auto r = apply_move(g, m);
            g = std::move(r.graph);
            inv.push_back(std::move(r.inverse));
        } catch (const Error& e) {
            throw Error(e.code(), "step " + std::to_string(i) + ": " + e.what(), i);
        }
    }
    std::reverse(inv.begin(), inv.end());
    return Trace{t.end, std::move(inv), t.start};
}

}  // namespace reeb
