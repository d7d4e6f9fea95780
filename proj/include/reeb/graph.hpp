#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "reeb/error.hpp"

namespace reeb {

using VertexId = std::int64_t;
using EdgeId = std::int64_t;
using Rational = boost::rational<std::int64_t>;

struct Edge {
    EdgeId id;
    VertexId src;
    VertexId dst;
    bool operator==(const Edge&) const = default;
};

/**
 * Directed multigraph with optional rational levels. Parallel edges are allowed,
 * loops are rejected at insertion. In/out edge lists are kept sorted by edge id so that
 * every traversal is deterministic.
 */
class ReebGraph {
public:
    struct VertexData {
        std::optional<Rational> level;
        bool marker = false;
        std::vector<EdgeId> in;
        std::vector<EdgeId> out;
        bool operator==(const VertexData&) const = default;
    };

    void add_vertex(VertexId v, bool marker = false);
    void add_edge(EdgeId e, VertexId src, VertexId dst);
    void remove_edge(EdgeId e);
    // The vertex must have no incident edges.
    void remove_vertex(VertexId v);
    void set_src(EdgeId e, VertexId v);
    void set_dst(EdgeId e, VertexId v);
    void reverse_edge(EdgeId e);

    bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
    bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::map<VertexId, VertexData>& vertices() const { return vertices_; }
    const std::map<EdgeId, Edge>& edges() const { return edges_; }
    std::vector<VertexId> vertex_ids() const;
    std::vector<EdgeId> edge_ids() const;

    const Edge& edge(EdgeId e) const;
    VertexId src(EdgeId e) const { return edge(e).src; }
    VertexId dst(EdgeId e) const { return edge(e).dst; }
    // The endpoint of e that is not v (e must be incident to v).
    VertexId other_end(EdgeId e, VertexId v) const;

    const std::vector<EdgeId>& in(VertexId v) const { return data(v).in; }
    const std::vector<EdgeId>& out(VertexId v) const { return data(v).out; }
    std::size_t indeg(VertexId v) const { return in(v).size(); }
    std::size_t outdeg(VertexId v) const { return out(v).size(); }
    std::size_t deg(VertexId v) const { return indeg(v) + outdeg(v); }
    std::size_t max_degree() const;

    bool marker(VertexId v) const { return data(v).marker; }
    void set_marker(VertexId v, bool m);

    std::optional<Rational> level(VertexId v) const { return data(v).level; }
    void set_level(VertexId v, Rational r);
    // True iff every vertex carries a level.
    bool has_levels() const;
    void clear_levels();

    VertexId next_vertex_id() const;
    EdgeId next_edge_id() const;

    bool operator==(const ReebGraph& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }
    // Ignores levels.
    bool same_structure(const ReebGraph& o) const;

private:
    const VertexData& data(VertexId v) const;
    VertexData& data(VertexId v);

    std::map<VertexId, VertexData> vertices_;
    std::map<EdgeId, Edge> edges_;
};

}  // namespace reeb
