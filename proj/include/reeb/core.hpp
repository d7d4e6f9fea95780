#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reeb/graph.hpp"

namespace reeb {

enum class VertexClass { Minimum, Maximum, UpFork, DownFork, Regular };

const char* to_string(VertexClass c);

struct DegreeProfile {
    std::size_t k0 = 0;
    std::size_t kn = 0;
    std::size_t delta2 = 0;
    std::size_t delta3 = 0;
    std::size_t delta3_in = 0;
    std::size_t delta3_out = 0;
};

struct Subgraph {
    std::set<VertexId> vertices;
    std::set<EdgeId> edges;
    bool empty() const { return vertices.empty() && edges.empty(); }
    bool operator==(const Subgraph&) const = default;
};

bool is_connected(const ReebGraph& g);
bool is_acyclic(const ReebGraph& g);

// A graph with no edges has no good orientation: its single vertex would be an extremum of degree 0.
bool is_good_orientation(const ReebGraph& g);
ReebGraph synthesize_levels(const ReebGraph& g);
// Kahn order, smallest id first among ready vertices. Throws NotGoodOrientation on a cycle.
std::vector<VertexId> topological_order(const ReebGraph& g);
// Level map check: every edge strictly increasing and all values distinct.
bool levels_valid(const ReebGraph& g);

long betti(const ReebGraph& g);
VertexClass classify(const ReebGraph& g, VertexId v);
std::optional<VertexClass> try_classify(const ReebGraph& g, VertexId v);
DegreeProfile degree_profile(const ReebGraph& g);
bool counting_identities(const ReebGraph& g);

std::set<VertexId> descendants(const ReebGraph& g, VertexId v);
std::set<VertexId> ancestors(const ReebGraph& g, VertexId v);
bool is_below(const ReebGraph& g, VertexId v, VertexId w);

// Union of all directed paths p -> q (vertices and edges). Empty when q is not reachable.
Subgraph path_set_IP(const ReebGraph& g, VertexId p, VertexId q);
// Union of all decreasing paths p -> q, i.e. increasing paths q -> p.
Subgraph path_set_DP(const ReebGraph& g, VertexId p, VertexId q);
Subgraph path_set_IP_from(const ReebGraph& g, VertexId p);
Subgraph path_set_DP_from(const ReebGraph& g, VertexId p);
// Puts a Regular vertex inside edge e; returns the new graph and the new vertex. The original edge keeps
// its id on the lower half.
std::pair<ReebGraph, VertexId> subdivide(const ReebGraph& g, EdgeId e, bool marker = true);

bool is_branching(const ReebGraph& g, VertexId v);
bool is_primitive(const ReebGraph& g);
bool ordered_implies_tree_check(const ReebGraph& g);

ReebGraph smooth(const ReebGraph& g);
bool is_smoothed(const ReebGraph& g);
std::optional<std::map<VertexId, VertexId>> iso_oriented(const ReebGraph& g1, const ReebGraph& g2);

// min -> b1 => t1 -> b2 => t2 ... -> tg -> max
ReebGraph canonical_graph(int g);
// min -> d1 -> ... -> dg => ug -> ... -> u1 -> max, with extra arcs di -> ui for i < g
ReebGraph initial_graph(int g);
bool is_canonical_form(const ReebGraph& g);
bool is_initial_form(const ReebGraph& g);

// Undirected bridges of the multigraph.
std::set<EdgeId> bridges(const ReebGraph& g);
// Connected components of g with the vertices in `removed` deleted.
std::vector<std::set<VertexId>> components_without(const ReebGraph& g, const std::set<VertexId>& removed);

}  // namespace reeb
