#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace crnepi {

enum class ErrorCode {
    SyntaxError,
    UndeclaredSpecies,
    DuplicateReaction,
    NonPositiveParameter,
    SelfLoopReaction,
    UnboundParameter,
    NegativeState,
    NonPositiveState,
    CrossEffectPresent,
    NotStronglyConnected,
    PreconditionViolated,
    DimensionTooLarge,
    NoConvergence,
    SingularV,
    DfeNotFound,
    DegenerateArray,
    NotSubgenerator,
    DimensionMismatch,
    NegativeEntry,
    RankNotOne,
    SingularShift,
    SearchSpaceExceeded,
    NotComplexBalanced,
    SingularA,
    NoHeteroclinicFound,
    HDrift,
    Unsupported,
    InputError,
};

const char* error_name(ErrorCode code);

// 2 = bad input, 3 = analysis error, 4 = numerical failure
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, const std::string& msg);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class CrossEffectError : public Error {
public:
    CrossEffectError(std::vector<std::string> described);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg);

}  // namespace crnepi
