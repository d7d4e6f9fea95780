#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reeb/graph.hpp"

namespace reeb::testing {

struct EnumOptions {
    int max_vertices = 8;
    // Also allow one vertex of degree 4..max_high_degree (at least one in- and one out-edge).
    bool relaxed = false;
    int max_high_degree = 5;
    bool allow_regular = true;
};

struct EnumStats {
    std::size_t graphs = 0;
    std::size_t states = 0;
};

/// Visits every connected good-oriented graph with 2..max_vertices vertices exactly once per
/// orientation-preserving isomorphism class. Vertices are inserted in topological order; each new
/// vertex consumes open out-stubs of earlier ones. Partial states are deduplicated by canonical code.
EnumStats enumerate_good_graphs(const EnumOptions& opt, const std::function<void(const ReebGraph&)>& visit);

// Canonical code of a small oriented multigraph (vertex count <= 255). Equal codes iff isomorphic.
std::string canonical_code(const ReebGraph& g);

}  // namespace reeb::testing
