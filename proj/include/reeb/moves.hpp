#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "reeb/graph.hpp"

namespace reeb {

enum class MoveKind { M1, M2, M2p, M3, M3p, M4, M5, M6, M7, M8, M9 };
enum class Direction { Forward, Reverse };

const char* to_string(MoveKind k);
const char* to_string(Direction d);
std::optional<MoveKind> move_kind_from_string(const std::string& s);
std::optional<Direction> direction_from_string(const std::string& s);

// M4, M5, M8 and M9 work in both directions; the others only forward.
bool two_sided(MoveKind k);
std::vector<MoveKind> all_move_kinds();

/**
 * A concrete rewrite site. Layout of `v` and `e` per kind and direction (arrows point upward):
 *
 *   M1  F/R  v = [lower, upper]           e = [lower->upper]             two Regulars swap places
 *   M2  F    v = [r, u]                   e = [r->u]                     UpFork u passes below Regular r
 *   M2  R    v = [u, r]                   e = [u->r, x]                  r drops onto in-edge x of u
 *   M3  F    v = [d, r]                   e = [d->r]                     DownFork d passes above Regular r
 *   M3  R    v = [r, d]                   e = [r->d, y]                  r rises onto out-edge y of d
 *   M4  F/R  v = [upper, lower]           e = [lower->upper]   sigma     stacked UpForks
 *   M5  F/R  v = [lower, upper]           e = [lower->upper]   sigma     stacked DownForks
 *   M6  F    v = [d, u]                   e = [d->u]                     DownFork below UpFork becomes UpFork below DownFork
 *   M6  R    v = [u, d]                   e = [u->d, x, y]               x: in-edge of u moved to d, y: out-edge of d kept by u
 *   M7  F    v = [d, u]                   e = [s1, s2]                   d => u collapses to two Regulars; s1 survives
 *   M7  R    v = [u, d]                   e = [u->d, s2]                 s2 is the id of the recreated strand
 *   M8  F    v = [min, u]                 e = [min->u]
 *   M8  R    v = [min, u]                 e = [x, min->u, u->top]        inserts min + UpFork on edge x; new ids given
 *   M9  F    v = [max, d]                 e = [d->max]
 *   M9  R    v = [max, d]                 e = [x, d->max, bottom->d]
 *
 * M2p and M3p use the M2 and M3 layouts.
 *
 * M4 strands: V1 = the other in-edge of upper, (V2, V3) = in-edges of lower by id. Afterwards the old
 * lower id sits on top with in-edges {V[sigma0], internal}; the old upper id sits below with the rest.
 * M5 strands: (V1, V2) = out-edges of upper by id, V3 = the other out-edge of lower. Afterwards the old
 * lower id sits on top with {V[sigma0], V[sigma1]}; the old upper id sits below with V[sigma2].
 */
struct MoveInstance {
    MoveKind kind = MoveKind::M1;
    Direction direction = Direction::Forward;
    std::vector<VertexId> v;
    std::vector<EdgeId> e;
    std::array<int, 3> sigma{1, 2, 3};
    // Set on one-sided reverse steps that exist only to be inverted later.
    bool planning = false;

    bool operator==(const MoveInstance&) const = default;
};

std::string describe(const MoveInstance& m);

struct Applied {
    ReebGraph graph;
    MoveInstance inverse;
};

std::vector<MoveInstance> match_sites(const ReebGraph& g, MoveKind kind, Direction direction);
// Checks the site against g without rewriting. Throws SiteStale / IllegalDirection.
void check_site(const ReebGraph& g, const MoveInstance& m);
Applied apply_move(const ReebGraph& g, const MoveInstance& m);
ReebGraph apply(const ReebGraph& g, const MoveInstance& m);

struct Trace {
    ReebGraph start;
    std::vector<MoveInstance> steps;
    ReebGraph end;
};

ReebGraph replay(const Trace& t);
Trace invert(const Trace& t);

// Grows a trace in place; keeps `end` current.
class TraceBuilder {
public:
    explicit TraceBuilder(ReebGraph start) : trace_{start, {}, start} {}
    const ReebGraph& graph() const { return trace_.end; }
    void push(const MoveInstance& m);
    Trace take() { return std::move(trace_); }
    const Trace& trace() const { return trace_; }

private:
    Trace trace_;
};

}  // namespace reeb
