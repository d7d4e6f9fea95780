#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "reeb/graph.hpp"
#include "reeb/moves.hpp"
#include "reeb/planner.hpp"

namespace reeb {

inline constexpr const char* kFormatVersion = "1";

using Json = nlohmann::json;

// All parsers throw SchemaError (naming the offending field) or DanglingReference.
Json graph_to_json(const ReebGraph& g);
ReebGraph graph_from_json(const Json& j);
std::string emit_graph(const ReebGraph& g);
ReebGraph parse_graph(const std::string& text);

Json move_to_json(const MoveInstance& m);
MoveInstance move_from_json(const Json& j);
Json trace_to_json(const Trace& t);
Trace trace_from_json(const Json& j);

Json step_to_json(const PlanStep& s);
PlanStep step_from_json(const Json& j);
Json plan_to_json(const Plan& p);
Plan plan_from_json(const Json& j);

Json parse_json_text(const std::string& text);

// Bottom-to-top layout: one rank per synthesized level. Throws NotGoodOrientation.
std::string emit_dot(const ReebGraph& g);

// Good-oriented graph with at most degree 3, exactly n vertices and the given cycle rank.
// Deterministic for a seed. Throws Infeasible when n < 2 * betti + 2 (n >= 2 for trees).
ReebGraph gen_random(std::uint64_t seed, int n_vertices, int target_betti);

}  // namespace reeb
