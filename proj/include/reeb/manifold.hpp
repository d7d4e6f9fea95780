#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reeb/graph.hpp"

namespace reeb {

struct ManifoldExpr;
using ExprPtr = std::shared_ptr<const ManifoldExpr>;

struct ManifoldExpr {
    enum class Kind { Sphere, ProjectiveSpace, OrientableSurface, NonOrientableSurface, CircleTimes, Product, ConnectedSum };
    Kind kind;
    int param = 0;  // n for S/RP, genus for surfaces
    ExprPtr lhs;    // CircleTimes: the factor crossed with a circle
    ExprPtr rhs;
    int dimension = 0;
    bool orientable = true;
};

ExprPtr sphere(int n);
ExprPtr projective_space(int n);
ExprPtr orientable_surface(int genus);
ExprPtr nonorientable_surface(int genus);
// Circle times S(n) or RP(n).
ExprPtr circle_times(ExprPtr factor);
ExprPtr product(ExprPtr a, ExprPtr b);
ExprPtr connected_sum(ExprPtr a, ExprPtr b);

/**
 * Grammar (whitespace ignored, `x` binds tighter than `#`, both left-associative):
 *   sum     := product ('#' product)*
 *   product := primary ('x' primary)*
 *   primary := atom | '(' sum ')'
 *   atom    := 'S(' n ')' | 'RP(' n ')' | 'Sig(' g ')' | 'N(' g ')' | 'S1xS(' k ')' | 'S1xRP(' k ')'
 * S1xS(k) is the circle times S(k), of dimension k + 1. Throws ParseError.
 */
ExprPtr parse_manifold(const std::string& text);
std::string to_string(const ManifoldExpr& e);

struct DerivationStep {
    std::string rule;
    std::string expr;
    std::vector<long> inputs;  // child values, or the atom parameters
    long value = 0;
};

struct ReebNumberResult {
    long value = 0;
    std::vector<DerivationStep> derivation;  // children before parents; the last step is the root
};

/// Throws UnsupportedExpression for inputs no rule covers, DimensionMismatch for unequal summands.
ReebNumberResult reeb_number(const ManifoldExpr& e);
// Recomputes every step from its rule and inputs and checks the root value.
bool replay_derivation(const ReebNumberResult& r);
bool check_budget(const ManifoldExpr& e, const ReebGraph& target);

}  // namespace reeb
