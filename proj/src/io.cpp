#include "reeb/io.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "reeb/core.hpp"

namespace reeb {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    fail(ErrorCode::SchemaError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(where, std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) schema(where, "expected an integer");
    return j.get<std::int64_t>();
}

template <class T>
std::vector<T> int_list(const Json& j, const std::string& where) {
    if (!j.is_array()) schema(where, "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const Json& unwrap_graph(const Json& j) {
    if (j.is_object() && !j.contains("vertices") && j.contains("graph")) return j["graph"];
    return j;
}

void check_version(const Json& j, const std::string& where) {
    const Json& v = field(j, "version", where);
    if (!v.is_string()) schema(where + ".version", "expected a string");
    if (v.get<std::string>() != kFormatVersion) schema(where + ".version", "unsupported version " + v.get<std::string>());
}

Json edge_json(const Edge& e) { return {{"id", e.id}, {"src", e.src}, {"dst", e.dst}}; }

Edge edge_from(const Json& j, const std::string& where) {
    return {as_int(field(j, "id", where), where + ".id"), as_int(field(j, "src", where), where + ".src"),
            as_int(field(j, "dst", where), where + ".dst")};
}

Json gadget_json(const Gadget& g) {
    return {{"vertex", g.vertex}, {"chain", g.chain}, {"internal", g.internal}};
}

Gadget gadget_from(const Json& j, const std::string& where) {
    Gadget g;
    g.vertex = as_int(field(j, "vertex", where), where + ".vertex");
    g.chain = int_list<VertexId>(field(j, "chain", where), where + ".chain");
    g.internal = int_list<EdgeId>(field(j, "internal", where), where + ".internal");
    return g;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

Json graph_to_json(const ReebGraph& g) {
    Json j = Json::object();
    j["version"] = kFormatVersion;
    Json& vs = j["vertices"] = Json::array();
    for (const auto& [v, d] : g.vertices()) {
        Json& o = vs.emplace_back(Json::object());
        o["id"] = v;
        if (d.level) {
            o["level"]["num"] = d.level->numerator();
            o["level"]["den"] = d.level->denominator();
        }
        if (d.marker) o["marker"] = true;
    }
    Json& es = j["edges"] = Json::array();
    for (const auto& [id, e] : g.edges()) es.push_back(edge_json(e));
    return j;
}

ReebGraph graph_from_json(const Json& in) {
    const Json& j = unwrap_graph(in);
    check_version(j, "graph");
    const Json& vs = field(j, "vertices", "graph");
    const Json& es = field(j, "edges", "graph");
    if (!vs.is_array()) schema("graph.vertices", "expected an array");
    if (!es.is_array()) schema("graph.edges", "expected an array");
    ReebGraph g;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string where = "graph.vertices[" + std::to_string(i) + "]";
        VertexId id = as_int(field(vs[i], "id", where), where + ".id");
        if (g.has_vertex(id)) schema(where + ".id", "duplicate vertex id " + std::to_string(id));
        bool marker = false;
        if (vs[i].contains("marker")) {
            if (!vs[i]["marker"].is_boolean()) schema(where + ".marker", "expected a boolean");
            marker = vs[i]["marker"].get<bool>();
        }
        g.add_vertex(id, marker);
        if (vs[i].contains("level")) {
            const Json& lv = vs[i]["level"];
            std::int64_t num = as_int(field(lv, "num", where + ".level"), where + ".level.num");
            std::int64_t den = as_int(field(lv, "den", where + ".level"), where + ".level.den");
            if (den <= 0) schema(where + ".level.den", "denominator must be positive");
            g.set_level(id, Rational(num, den));
        }
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string where = "graph.edges[" + std::to_string(i) + "]";
        Edge e = edge_from(es[i], where);
        if (g.has_edge(e.id)) schema(where + ".id", "duplicate edge id " + std::to_string(e.id));
        if (!g.has_vertex(e.src) || !g.has_vertex(e.dst))
            fail(ErrorCode::DanglingReference,
                 where + ": edge " + std::to_string(e.id) + " references a missing vertex");
        if (e.src == e.dst) schema(where, "loop at vertex " + std::to_string(e.src));
        g.add_edge(e.id, e.src, e.dst);
        auto ls = g.level(e.src), ld = g.level(e.dst);
        if (ls && ld && !(*ls < *ld)) schema(where, "levels must increase along edge " + std::to_string(e.id));
    }
    return g;
}

std::string emit_graph(const ReebGraph& g) { return graph_to_json(g).dump(2); }

ReebGraph parse_graph(const std::string& text) { return graph_from_json(parse_json_text(text)); }

Json move_to_json(const MoveInstance& m) {
    Json o = {{"type", "move"}, {"kind", to_string(m.kind)}, {"direction", to_string(m.direction)},
              {"v", m.v}, {"e", m.e}};
    if (m.kind == MoveKind::M4 || m.kind == MoveKind::M5) o["sigma"] = m.sigma;
    if (m.planning) o["planning"] = true;
    return o;
}

MoveInstance move_from_json(const Json& j) {
    const std::string where = "move";
    MoveInstance m;
    const Json& k = field(j, "kind", where);
    if (!k.is_string() || !move_kind_from_string(k.get<std::string>())) schema(where + ".kind", "unknown move kind");
    m.kind = *move_kind_from_string(k.get<std::string>());
    const Json& d = field(j, "direction", where);
    if (!d.is_string() || !direction_from_string(d.get<std::string>())) schema(where + ".direction", "unknown direction");
    m.direction = *direction_from_string(d.get<std::string>());
    m.v = int_list<VertexId>(field(j, "v", where), where + ".v");
    m.e = int_list<EdgeId>(field(j, "e", where), where + ".e");
    if (j.contains("sigma")) {
        auto s = int_list<int>(j["sigma"], where + ".sigma");
        if (s.size() != 3) schema(where + ".sigma", "expected three entries");
        std::copy(s.begin(), s.end(), m.sigma.begin());
    }
    if (j.contains("planning")) {
        if (!j["planning"].is_boolean()) schema(where + ".planning", "expected a boolean");
        m.planning = j["planning"].get<bool>();
    }
    return m;
}

Json trace_to_json(const Trace& t) {
    Json steps = Json::array();
    for (const auto& m : t.steps) steps.push_back(move_to_json(m));
    return {{"version", kFormatVersion}, {"start", graph_to_json(t.start)}, {"steps", steps}, {"end", graph_to_json(t.end)}};
}

Trace trace_from_json(const Json& j) {
    check_version(j, "trace");
    Trace t;
    t.start = graph_from_json(field(j, "start", "trace"));
    const Json& steps = field(j, "steps", "trace");
    if (!steps.is_array()) schema("trace.steps", "expected an array");
    for (const auto& s : steps) t.steps.push_back(move_from_json(s));
    t.end = graph_from_json(field(j, "end", "trace"));
    return t;
}

Json step_to_json(const PlanStep& s) {
    if (auto m = std::get_if<MoveInstance>(&s)) return move_to_json(*m);
    const auto& op = std::get<StructuralOp>(s);
    Json o = {{"type", to_string(op.kind)}};
    switch (op.kind) {
        case StructuralKind::SpliceB1:
        case StructuralKind::SpliceB2: {
            Json es = Json::array();
            for (auto& e : op.add_edges) es.push_back(edge_json(e));
            o["remove_edges"] = op.remove_edges;
            o["add_vertices"] = op.add_vertices;
            o["add_edges"] = es;
            break;
        }
        case StructuralKind::ReflectComponent:
            o["reflect"] = op.reflect;
            o["boundary"] = op.boundary;
            break;
        case StructuralKind::CollapseGadget:
            o["gadget"] = gadget_json(op.gadget);
            break;
    }
    return o;
}

PlanStep step_from_json(const Json& j) {
    const Json& t = field(j, "type", "step");
    if (!t.is_string()) schema("step.type", "expected a string");
    std::string type = t.get<std::string>();
    if (type == "move") return move_from_json(j);
    auto kind = structural_kind_from_string(type);
    if (!kind) schema("step.type", "unknown step type " + type);
    StructuralOp op;
    op.kind = *kind;
    const std::string where = "step(" + type + ")";
    switch (op.kind) {
        case StructuralKind::SpliceB1:
        case StructuralKind::SpliceB2: {
            op.remove_edges = int_list<EdgeId>(field(j, "remove_edges", where), where + ".remove_edges");
            op.add_vertices = int_list<VertexId>(field(j, "add_vertices", where), where + ".add_vertices");
            const Json& es = field(j, "add_edges", where);
            if (!es.is_array()) schema(where + ".add_edges", "expected an array");
            for (std::size_t i = 0; i < es.size(); ++i)
                op.add_edges.push_back(edge_from(es[i], where + ".add_edges[" + std::to_string(i) + "]"));
            break;
        }
        case StructuralKind::ReflectComponent:
            op.reflect = int_list<EdgeId>(field(j, "reflect", where), where + ".reflect");
            op.boundary = int_list<VertexId>(field(j, "boundary", where), where + ".boundary");
            break;
        case StructuralKind::CollapseGadget:
            op.gadget = gadget_from(field(j, "gadget", where), where + ".gadget");
            break;
    }
    return op;
}

Json plan_to_json(const Plan& p) {
    Json steps = Json::array();
    for (const auto& s : p.steps) steps.push_back(step_to_json(s));
    return {{"version", kFormatVersion}, {"start", graph_to_json(p.start)}, {"steps", steps},
            {"target", graph_to_json(p.target)}};
}

Plan plan_from_json(const Json& j) {
    check_version(j, "plan");
    Plan p;
    p.start = graph_from_json(field(j, "start", "plan"));
    const Json& steps = field(j, "steps", "plan");
    if (!steps.is_array()) schema("plan.steps", "expected an array");
    for (const auto& s : steps) p.steps.push_back(step_from_json(s));
    p.target = graph_from_json(field(j, "target", "plan"));
    return p;
}

std::string emit_dot(const ReebGraph& g) {
    if (!is_good_orientation(g)) fail(ErrorCode::NotGoodOrientation, "dot output needs a good orientation");
    // Layer = longest path from a source, so every edge climbs at least one rank.
    std::map<VertexId, int> layer;
    for (VertexId v : topological_order(g)) {
        int l = 0;
        for (EdgeId e : g.in(v)) l = std::max(l, layer[g.src(e)] + 1);
        layer[v] = l;
    }
    std::map<int, std::vector<VertexId>> ranks;
    for (auto& [v, l] : layer) ranks[l].push_back(v);

    std::ostringstream os;
    os << "digraph reeb {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
    for (const auto& [v, d] : g.vertices()) {
        os << "  v" << v << " [label=\"" << v << "\\n" << to_string(classify(g, v)) << "\"";
        if (d.marker) os << ", style=dashed";
        os << "];\n";
    }
    for (const auto& [l, vs] : ranks) {
        os << "  { rank=same;";
        for (VertexId v : vs) os << " v" << v << ";";
        os << " }\n";
    }
    for (const auto& [id, e] : g.edges()) os << "  v" << e.src << " -> v" << e.dst << " [label=\"e" << id << "\"];\n";
    os << "}\n";
    return os.str();
}

ReebGraph gen_random(std::uint64_t seed, int n, int b) {
    if (b < 0 || n < 2 || n < 2 * b + 2)
        fail(ErrorCode::Infeasible, "no degree-3 graph with " + std::to_string(n) + " vertices has " + std::to_string(b) +
                                        " cycles");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t size) { return static_cast<std::size_t>(rng() % size); };

    ReebGraph g = initial_graph(b);
    int missing = n - static_cast<int>(g.vertex_count());
    if (missing % 2 == 1) {
        auto ids = g.edge_ids();
        g = subdivide(g, ids[pick(ids.size())], false).first;
        --missing;
    }

    const std::vector<MoveKind> shuffle_kinds{MoveKind::M1, MoveKind::M2, MoveKind::M3, MoveKind::M4,
                                              MoveKind::M5, MoveKind::M6};
    auto shuffle_once = [&] {
        MoveKind k = shuffle_kinds[pick(shuffle_kinds.size())];
        Direction d = pick(2) == 0 ? Direction::Forward : Direction::Reverse;
        auto sites = match_sites(g, k, d);
        if (sites.empty()) return;
        MoveInstance m = sites[pick(sites.size())];
        if (d == Direction::Reverse && !two_sided(k)) m.planning = true;
        g = apply(g, m);
    };

    while (missing > 0) {
        MoveKind k = pick(2) == 0 ? MoveKind::M8 : MoveKind::M9;
        auto sites = match_sites(g, k, Direction::Reverse);
        g = apply(g, sites[pick(sites.size())]);
        missing -= 2;
        for (int i = 0; i < 3; ++i) shuffle_once();
    }
    for (int i = 0; i < 2 * n; ++i) shuffle_once();
    return g;
}

}  // namespace reeb
