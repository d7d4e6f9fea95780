#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reeb/graph.hpp"
#include "reeb/moves.hpp"
#include "reeb/reduction.hpp"

namespace reeb {

enum class CaseTag { A, B1, B2_I, B2_II };
const char* to_string(CaseTag t);

enum class StructuralKind { SpliceB1, SpliceB2, ReflectComponent, CollapseGadget };
const char* to_string(StructuralKind k);
std::optional<StructuralKind> structural_kind_from_string(const std::string& s);

/**
 * Non-move plan step. Splices run in plan direction, i.e. they rebuild the larger graph from the
 * spliced one: drop `remove_edges`, then add `add_vertices` and `add_edges`. ReflectComponent reverses
 * `reflect`, which must be the full edge set of one component once `boundary` is deleted.
 */
struct StructuralOp {
    StructuralKind kind = StructuralKind::ReflectComponent;
    std::vector<EdgeId> remove_edges;
    std::vector<VertexId> add_vertices;
    std::vector<Edge> add_edges;
    std::vector<EdgeId> reflect;
    std::vector<VertexId> boundary;
    Gadget gadget{};
    bool operator==(const StructuralOp&) const = default;
};

using PlanStep = std::variant<MoveInstance, StructuralOp>;

struct Plan {
    ReebGraph start;
    std::vector<PlanStep> steps;
    ReebGraph target;
};

struct VerifyResult {
    bool ok = false;
    std::optional<std::size_t> step;
    std::optional<ErrorCode> code;
    std::string message;
};

CaseTag classify_leaf(const ReebGraph& g, VertexId v);

struct SpliceResult {
    ReebGraph graph;
    // Plan-direction steps that turn `graph` back into the spliced input.
    std::vector<StructuralOp> undo;
};

SpliceResult splice_b1(const ReebGraph& g, VertexId v, VertexId w);
// v: maximum with UpFork w below; v_prime: minimum with DownFork w_prime above.
SpliceResult splice_b2(const ReebGraph& g, VertexId v, VertexId w, VertexId v_prime, VertexId w_prime);

/// Rotates the U-tree of maximum v and the D-tree of minimum v_prime so that all strands joining them
/// hang from one root branch on each side. Afterwards no increasing path runs from the free branch of
/// the DownFork under v_prime's tree to the free branch of the UpFork over v's tree.
ReductionResult eliminate_increasing_paths(const ReebGraph& g, VertexId v, VertexId v_prime);

/// New levels with level(y_prime) < level(x): ranks from the current levels (or a topological order),
/// then everything at or below y_prime shifted down by a half-integer amount.
ReebGraph relevel_below(const ReebGraph& g, VertexId y_prime, VertexId x);

Plan realize(const ReebGraph& target, long budget);
ReebGraph apply_structural(const ReebGraph& g, const StructuralOp& op);
ReebGraph replay_plan(const Plan& p);
VerifyResult verify_plan(const Plan& p);

// Counts of the recursion cases taken by the most recent realize call on this thread.
struct RealizeStats {
    std::size_t case_a = 0;
    std::size_t case_b1 = 0;
    std::size_t case_b2 = 0;
    std::size_t base = 0;
};
const RealizeStats& last_realize_stats();

}  // namespace reeb
