#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace reeb {

enum class ErrorCode {
    Disconnected,
    NotGoodOrientation,
    UnsupportedDegree,
    NotAFork,
    NotSmoothed,
    SiteStale,
    IllegalDirection,
    NotInvertible,
    TargetTooLarge,
    BadVertex,
    GadgetBroken,
    NeighborDegreeOne,
    NoConfiguration,
    PathExists,
    WrongCase,
    PreconditionNotEstablished,
    BudgetExceeded,
    UnsupportedExpression,
    DimensionMismatch,
    ParseError,
    SchemaError,
    DanglingReference,
    Infeasible,
    InvalidGraph,
    StartNotInitial,
    FinalMismatch,
};

const char* to_string(ErrorCode c);

// Codes that describe malformed input rather than a violated contract.
bool is_input_error(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<std::size_t> step = std::nullopt)
        : std::runtime_error(what), code_(code), step_(step) {}

    ErrorCode code() const { return code_; }
    std::optional<std::size_t> step() const { return step_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> step_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// REEB_DEBUG_CHECKS=1 turns on extra post-condition checks in apply and the reductions.
bool debug_checks();

}  // namespace reeb
