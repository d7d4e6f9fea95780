#include "reeb/manifold.hpp"

#include <cctype>
#include <optional>

#include "reeb/core.hpp"

namespace reeb {

namespace {

using Kind = ManifoldExpr::Kind;

ExprPtr make(Kind k, int param, ExprPtr l, ExprPtr r, int dim, bool orient) {
    auto e = std::make_shared<ManifoldExpr>();
    e->kind = k;
    e->param = param;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->dimension = dim;
    e->orientable = orient;
    return e;
}

[[noreturn]] void unsupported(const std::string& what) { fail(ErrorCode::UnsupportedExpression, what); }

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& what) {
        fail(ErrorCode::ParseError, "manifold expression, column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    int number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected a non-negative integer");
        if (pos_ - start > 6) error("number too large");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    int argument() {
        if (!accept("(")) error("expected '('");
        int n = number();
        if (!accept(")")) error("expected ')'");
        return n;
    }

    ExprPtr sum() {
        ExprPtr e = prod();
        while (accept("#")) e = connected_sum(e, prod());
        return e;
    }

    ExprPtr prod() {
        ExprPtr e = primary();
        for (;;) {
            skip();
            // A product sign never starts an atom keyword, so plain 'x' is unambiguous here.
            if (pos_ < s_.size() && s_[pos_] == 'x') {
                ++pos_;
                e = product(e, primary());
            } else {
                return e;
            }
        }
    }

    ExprPtr primary() {
        if (accept("(")) {
            ExprPtr e = sum();
            if (!accept(")")) error("expected ')'");
            return e;
        }
        // Longest keyword first.
        if (accept("S1xRP")) return circle_times(projective_space(argument()));
        if (accept("S1xS")) return circle_times(sphere(argument()));
        if (accept("Sig")) return orientable_surface(argument());
        if (accept("RP")) return projective_space(argument());
        if (accept("S")) return sphere(argument());
        if (accept("N")) return nonorientable_surface(argument());
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        error("unknown atom");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

// (orientable, genus) when e is a closed surface built from Sig and N by connected sums.
std::optional<std::pair<bool, long>> surface_form(const ManifoldExpr& e) {
    switch (e.kind) {
        case Kind::OrientableSurface: return std::make_pair(true, static_cast<long>(e.param));
        case Kind::NonOrientableSurface: return std::make_pair(false, static_cast<long>(e.param));
        case Kind::ConnectedSum: {
            auto a = surface_form(*e.lhs), b = surface_form(*e.rhs);
            if (!a || !b) return std::nullopt;
            // Sig(a) # N(b) = N(2a + b).
            long ga = a->first && !b->first ? 2 * a->second : a->second;
            long gb = b->first && !a->first ? 2 * b->second : b->second;
            return std::make_pair(a->first && b->first, ga + gb);
        }
        default: return std::nullopt;
    }
}

void push(ReebNumberResult& r, std::string rule, const ManifoldExpr& e, std::vector<long> inputs, long value) {
    r.derivation.push_back({std::move(rule), to_string(e), std::move(inputs), value});
}

long eval(const ManifoldExpr& e, ReebNumberResult& r) {
    switch (e.kind) {
        case Kind::Sphere:
            push(r, "sphere", e, {e.param}, 0);
            return 0;
        case Kind::ProjectiveSpace:
            push(r, "projective-space", e, {e.param}, 0);
            return 0;
        case Kind::OrientableSurface:
            push(r, "orientable-surface", e, {e.param}, e.param);
            return e.param;
        case Kind::NonOrientableSurface:
            push(r, "nonorientable-surface", e, {e.param}, e.param / 2);
            return e.param / 2;
        case Kind::CircleTimes:
            push(r, "circle-product", e, {e.lhs->param}, 1);
            return 1;
        case Kind::Product: {
            long a = eval(*e.lhs, r), b = eval(*e.rhs, r);
            push(r, "product-max", e, {a, b}, std::max(a, b));
            return std::max(a, b);
        }
        case Kind::ConnectedSum: {
            if (e.lhs->dimension != e.rhs->dimension)
                fail(ErrorCode::DimensionMismatch, "connected sum of dimensions " + std::to_string(e.lhs->dimension) +
                                                       " and " + std::to_string(e.rhs->dimension));
            if (e.dimension >= 3) {
                long a = eval(*e.lhs, r), b = eval(*e.rhs, r);
                push(r, "sum-additive", e, {a, b}, a + b);
                return a + b;
            }
            auto sf = surface_form(e);
            if (!sf) unsupported("sum rule needs dimension 3 or more; " + to_string(e) + " is not a sum of Sig/N surfaces");
            long v = sf->first ? sf->second : sf->second / 2;
            push(r, "surface-normal-form", e, {sf->first ? 1 : 0, sf->second}, v);
            return v;
        }
    }
    unsupported("unknown node");
}

}  // namespace

ExprPtr sphere(int n) {
    if (n < 2) unsupported("S(" + std::to_string(n) + ") has dimension below 2");
    return make(Kind::Sphere, n, nullptr, nullptr, n, true);
}

ExprPtr projective_space(int n) {
    if (n < 2) unsupported("RP(" + std::to_string(n) + ") has dimension below 2");
    return make(Kind::ProjectiveSpace, n, nullptr, nullptr, n, n % 2 == 1);
}

ExprPtr orientable_surface(int g) { return make(Kind::OrientableSurface, g, nullptr, nullptr, 2, true); }

ExprPtr nonorientable_surface(int g) {
    if (g < 1) unsupported("N(g) needs g >= 1");
    return make(Kind::NonOrientableSurface, g, nullptr, nullptr, 2, false);
}

ExprPtr circle_times(ExprPtr f) {
    // Only spheres and projective spaces may follow the circle; S1xS(1) is the torus.
    if (f->kind == Kind::Sphere || f->kind == Kind::ProjectiveSpace)
        return make(Kind::CircleTimes, f->param, f, nullptr, f->dimension + 1, f->orientable);
    unsupported("circle product needs S(k) or RP(k)");
}

ExprPtr product(ExprPtr a, ExprPtr b) {
    int d = a->dimension + b->dimension;
    bool o = a->orientable && b->orientable;
    return make(Kind::Product, 0, std::move(a), std::move(b), d, o);
}

ExprPtr connected_sum(ExprPtr a, ExprPtr b) {
    int d = a->dimension;
    bool o = a->orientable && b->orientable;
    return make(Kind::ConnectedSum, 0, std::move(a), std::move(b), d, o);
}

ExprPtr parse_manifold(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const ManifoldExpr& e) {
    switch (e.kind) {
        case Kind::Sphere: return "S(" + std::to_string(e.param) + ")";
        case Kind::ProjectiveSpace: return "RP(" + std::to_string(e.param) + ")";
        case Kind::OrientableSurface: return "Sig(" + std::to_string(e.param) + ")";
        case Kind::NonOrientableSurface: return "N(" + std::to_string(e.param) + ")";
        case Kind::CircleTimes:
            return std::string(e.lhs->kind == Kind::Sphere ? "S1xS(" : "S1xRP(") + std::to_string(e.param) + ")";
        case Kind::Product: return "(" + to_string(*e.lhs) + " x " + to_string(*e.rhs) + ")";
        case Kind::ConnectedSum: return "(" + to_string(*e.lhs) + " # " + to_string(*e.rhs) + ")";
    }
    return "?";
}

ReebNumberResult reeb_number(const ManifoldExpr& e) {
    ReebNumberResult r;
    r.value = eval(e, r);
    return r;
}

bool replay_derivation(const ReebNumberResult& r) {
    std::vector<long> stack;
    for (const auto& s : r.derivation) {
        const auto& in = s.inputs;
        long v;
        if (s.rule == "sphere" || s.rule == "projective-space") {
            if (in.size() != 1) return false;
            v = 0;
        } else if (s.rule == "orientable-surface") {
            if (in.size() != 1) return false;
            v = (2 * in[0]) / 2;
        } else if (s.rule == "nonorientable-surface") {
            if (in.size() != 1) return false;
            v = in[0] / 2;
        } else if (s.rule == "circle-product") {
            if (in.size() != 1) return false;
            v = 1;
        } else if (s.rule == "surface-normal-form") {
            if (in.size() != 2) return false;
            v = in[0] ? in[1] : in[1] / 2;
        } else if (s.rule == "product-max" || s.rule == "sum-additive") {
            if (in.size() != 2 || stack.size() < 2) return false;
            long b = stack.back();
            stack.pop_back();
            long a = stack.back();
            stack.pop_back();
            if (a != in[0] || b != in[1]) return false;
            v = s.rule == "product-max" ? std::max(a, b) : a + b;
        } else {
            return false;
        }
        if (v != s.value) return false;
        stack.push_back(v);
    }
    return stack.size() == 1 && stack.back() == r.value;
}

bool check_budget(const ManifoldExpr& e, const ReebGraph& target) { return betti(target) <= reeb_number(e).value; }

}  // namespace reeb
