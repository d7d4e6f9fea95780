#include "reeb/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace reeb {

const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::NotGoodOrientation: return "NotGoodOrientation";
        case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorCode::NotAFork: return "NotAFork";
        case ErrorCode::NotSmoothed: return "NotSmoothed";
        case ErrorCode::SiteStale: return "SiteStale";
        case ErrorCode::IllegalDirection: return "IllegalDirection";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::TargetTooLarge: return "TargetTooLarge";
        case ErrorCode::BadVertex: return "BadVertex";
        case ErrorCode::GadgetBroken: return "GadgetBroken";
        case ErrorCode::NeighborDegreeOne: return "NeighborDegreeOne";
        case ErrorCode::NoConfiguration: return "NoConfiguration";
        case ErrorCode::PathExists: return "PathExists";
        case ErrorCode::WrongCase: return "WrongCase";
        case ErrorCode::PreconditionNotEstablished: return "PreconditionNotEstablished";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::UnsupportedExpression: return "UnsupportedExpression";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::StartNotInitial: return "StartNotInitial";
        case ErrorCode::FinalMismatch: return "FinalMismatch";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode c) {
    return c == ErrorCode::ParseError || c == ErrorCode::SchemaError || c == ErrorCode::DanglingReference ||
           c == ErrorCode::InvalidGraph;
}

bool debug_checks() {
    static const bool on = [] {
        const char* s = std::getenv("REEB_DEBUG_CHECKS");
        return s != nullptr && std::string(s) != "0" && std::string(s) != "";
    }();
    return on;
}

namespace {

void insert_sorted(std::vector<EdgeId>& v, EdgeId e) { v.insert(std::lower_bound(v.begin(), v.end(), e), e); }

void erase_sorted(std::vector<EdgeId>& v, EdgeId e) {
    auto it = std::lower_bound(v.begin(), v.end(), e);
    if (it != v.end() && *it == e) v.erase(it);
}

}  // namespace

const ReebGraph::VertexData& ReebGraph::data(VertexId v) const {
    auto it = vertices_.find(v);
    if (it == vertices_.end()) fail(ErrorCode::InvalidGraph, "no vertex " + std::to_string(v));
    return it->second;
}

ReebGraph::VertexData& ReebGraph::data(VertexId v) {
    auto it = vertices_.find(v);
    if (it == vertices_.end()) fail(ErrorCode::InvalidGraph, "no vertex " + std::to_string(v));
    return it->second;
}

void ReebGraph::add_vertex(VertexId v, bool marker) {
    if (has_vertex(v)) fail(ErrorCode::InvalidGraph, "duplicate vertex " + std::to_string(v));
    vertices_[v].marker = marker;
}

void ReebGraph::add_edge(EdgeId e, VertexId src, VertexId dst) {
    if (has_edge(e)) fail(ErrorCode::InvalidGraph, "duplicate edge " + std::to_string(e));
    if (src == dst) fail(ErrorCode::InvalidGraph, "loop at vertex " + std::to_string(src));
    auto& s = data(src);
    auto& d = data(dst);
    edges_[e] = Edge{e, src, dst};
    insert_sorted(s.out, e);
    insert_sorted(d.in, e);
}

void ReebGraph::remove_edge(EdgeId e) {
    const Edge ed = edge(e);
    erase_sorted(data(ed.src).out, e);
    erase_sorted(data(ed.dst).in, e);
    edges_.erase(e);
}

void ReebGraph::remove_vertex(VertexId v) {
    if (deg(v) != 0) fail(ErrorCode::InvalidGraph, "removing vertex with edges " + std::to_string(v));
    vertices_.erase(v);
}

void ReebGraph::set_src(EdgeId e, VertexId v) {
    Edge& ed = edges_.at(e);
    if (ed.src == v) return;
    if (ed.dst == v) fail(ErrorCode::InvalidGraph, "rewrite would create a loop");
    erase_sorted(data(ed.src).out, e);
    insert_sorted(data(v).out, e);
    ed.src = v;
}

void ReebGraph::set_dst(EdgeId e, VertexId v) {
    Edge& ed = edges_.at(e);
    if (ed.dst == v) return;
    if (ed.src == v) fail(ErrorCode::InvalidGraph, "rewrite would create a loop");
    erase_sorted(data(ed.dst).in, e);
    insert_sorted(data(v).in, e);
    ed.dst = v;
}

void ReebGraph::reverse_edge(EdgeId e) {
    Edge& ed = edges_.at(e);
    erase_sorted(data(ed.src).out, e);
    erase_sorted(data(ed.dst).in, e);
    std::swap(ed.src, ed.dst);
    insert_sorted(data(ed.src).out, e);
    insert_sorted(data(ed.dst).in, e);
}

std::vector<VertexId> ReebGraph::vertex_ids() const {
    std::vector<VertexId> r;
    r.reserve(vertices_.size());
    for (const auto& [v, d] : vertices_) r.push_back(v);
    return r;
}

std::vector<EdgeId> ReebGraph::edge_ids() const {
    std::vector<EdgeId> r;
    r.reserve(edges_.size());
    for (const auto& [e, d] : edges_) r.push_back(e);
    return r;
}

const Edge& ReebGraph::edge(EdgeId e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) fail(ErrorCode::InvalidGraph, "no edge " + std::to_string(e));
    return it->second;
}

VertexId ReebGraph::other_end(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    return ed.src == v ? ed.dst : ed.src;
}

std::size_t ReebGraph::max_degree() const {
    std::size_t m = 0;
    for (const auto& [v, d] : vertices_) m = std::max(m, d.in.size() + d.out.size());
    return m;
}

void ReebGraph::set_marker(VertexId v, bool m) { data(v).marker = m; }

void ReebGraph::set_level(VertexId v, Rational r) { data(v).level = r; }

bool ReebGraph::has_levels() const {
    if (vertices_.empty()) return false;
    return std::all_of(vertices_.begin(), vertices_.end(), [](const auto& p) { return p.second.level.has_value(); });
}

void ReebGraph::clear_levels() {
    for (auto& [v, d] : vertices_) d.level.reset();
}

VertexId ReebGraph::next_vertex_id() const { return vertices_.empty() ? 0 : vertices_.rbegin()->first + 1; }

EdgeId ReebGraph::next_edge_id() const { return edges_.empty() ? 0 : edges_.rbegin()->first + 1; }

bool ReebGraph::same_structure(const ReebGraph& o) const {
    if (edges_ != o.edges_ || vertices_.size() != o.vertices_.size()) return false;
    for (auto a = vertices_.begin(), b = o.vertices_.begin(); a != vertices_.end(); ++a, ++b) {
        if (a->first != b->first || a->second.marker != b->second.marker) return false;
    }
    return true;
}

}  // namespace reeb
