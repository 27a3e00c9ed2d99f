#pragma once

#include <stdexcept>
#include <string>

namespace treewalk {

// Machine-checkable failure reasons. CLI maps Error -> exit code 2,
// InvariantViolation -> exit code 3.
enum class ErrorCode {
    InvalidTreeParams,
    OutOfAlphabet,
    NotReduced,
    MismatchedTreeParams,
    EqualEnds,
    ParityMismatch,
    OutOfRange,
    LevelOrder,
    NotAdjacent,
    ROutOfRange,
    OutOfOpenInterval,
    NonpositiveX,
    EmptyEnsemble,
    IndexBeyondTrajectory,
    InvalidConfig,
    DivisionByZeroCount,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidTreeParams:    return "InvalidTreeParams";
    case ErrorCode::OutOfAlphabet:        return "OutOfAlphabet";
    case ErrorCode::NotReduced:           return "NotReduced";
    case ErrorCode::MismatchedTreeParams: return "MismatchedTreeParams";
    case ErrorCode::EqualEnds:            return "EqualEnds";
    case ErrorCode::ParityMismatch:       return "ParityMismatch";
    case ErrorCode::OutOfRange:           return "OutOfRange";
    case ErrorCode::LevelOrder:           return "LevelOrder";
    case ErrorCode::NotAdjacent:          return "NotAdjacent";
    case ErrorCode::ROutOfRange:          return "ROutOfRange";
    case ErrorCode::OutOfOpenInterval:    return "OutOfOpenInterval";
    case ErrorCode::NonpositiveX:         return "NonpositiveX";
    case ErrorCode::EmptyEnsemble:        return "EmptyEnsemble";
    case ErrorCode::IndexBeyondTrajectory:return "IndexBeyondTrajectory";
    case ErrorCode::InvalidConfig:        return "InvalidConfig";
    case ErrorCode::DivisionByZeroCount:  return "DivisionByZeroCount";
    }
    return "UnknownError";
}

// Validation failure: bad argument, bad config, unsatisfiable precondition.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// A computed result contradicts a structural guarantee of the library itself.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace treewalk
