#pragma once

#include <vector>

#include "reeb/graph.hpp"
#include "reeb/moves.hpp"

namespace reeb {

struct ReductionResult {
    ReebGraph graph;
    Trace trace;
};

/// Cancels extrema pairwise until one minimum and one maximum remain. Uses M2, M4, M6, M8 for minima and
/// M3, M5, M6, M9 for maxima.
ReductionResult to_one_min_max(const ReebGraph& g);

/// Brings a graph to the chain-of-cycles normal form. Regular vertices are moved only when they stand
/// between two forks that have to meet.
ReductionResult canonicalize(const ReebGraph& g);

/// Removes the topmost cycle with M7 until betti equals k.
ReductionResult drop_cycles(const ReebGraph& g, long k);

/// Pushes every UpFork above every DownFork with reverse M6 steps. Every step is marked for inversion.
/// Regular vertices between an UpFork and a DownFork block the rewrite (NotSmoothed).
ReductionResult primitivize(const ReebGraph& g);

struct Gadget {
    VertexId vertex;              // original vertex; its id is reused by the lowest gadget vertex
    std::vector<VertexId> chain;  // bottom to top: DownForks, then UpForks
    std::vector<EdgeId> internal; // internal[i] joins chain[i] -> chain[i + 1]
    bool operator==(const Gadget&) const = default;
};

struct ExpansionRecord {
    std::vector<Gadget> gadgets;
};

struct Expansion {
    ReebGraph graph;
    ExpansionRecord record;
};

Expansion expand_high_degree(const ReebGraph& g);
ReebGraph contract_gadgets(const ReebGraph& g, const ExpansionRecord& record);
ReebGraph contract_gadget(const ReebGraph& g, const Gadget& gadget);

}  // namespace reeb
