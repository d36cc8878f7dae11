#include "crnepi/errors.hpp"

namespace crnepi {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredSpecies: return "UndeclaredSpecies";
    case ErrorCode::DuplicateReaction: return "DuplicateReaction";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::SelfLoopReaction: return "SelfLoopReaction";
    case ErrorCode::UnboundParameter: return "UnboundParameter";
    case ErrorCode::NegativeState: return "NegativeState";
    case ErrorCode::NonPositiveState: return "NonPositiveState";
    case ErrorCode::CrossEffectPresent: return "CrossEffectPresent";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularV: return "SingularV";
    case ErrorCode::DfeNotFound: return "DfeNotFound";
    case ErrorCode::DegenerateArray: return "DegenerateArray";
    case ErrorCode::NotSubgenerator: return "NotSubgenerator";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::RankNotOne: return "RankNotOne";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::SearchSpaceExceeded: return "SearchSpaceExceeded";
    case ErrorCode::NotComplexBalanced: return "NotComplexBalanced";
    case ErrorCode::SingularA: return "SingularA";
    case ErrorCode::NoHeteroclinicFound: return "NoHeteroclinicFound";
    case ErrorCode::HDrift: return "HDrift";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InputError: return "InputError";
    }
    return "Error";
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UndeclaredSpecies:
    case ErrorCode::DuplicateReaction:
    case ErrorCode::NonPositiveParameter:
    case ErrorCode::SelfLoopReaction:
    case ErrorCode::UnboundParameter:
    case ErrorCode::NegativeState:
    case ErrorCode::NonPositiveState:
    case ErrorCode::NotSubgenerator:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NegativeEntry:
    case ErrorCode::InputError:
        return 2;
    case ErrorCode::NoConvergence:
    case ErrorCode::SingularV:
    case ErrorCode::SingularShift:
    case ErrorCode::SingularA:
    case ErrorCode::DegenerateArray:
    case ErrorCode::NoHeteroclinicFound:
    case ErrorCode::HDrift:
        return 4;
    default:
        return 3;
    }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

SyntaxError::SyntaxError(int line, int column, const std::string& msg)
    : Error(ErrorCode::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line), column_(column) {}

static std::string join_violations(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

CrossEffectError::CrossEffectError(std::vector<std::string> described)
    : Error(ErrorCode::CrossEffectPresent, join_violations(described)),
      violations_(std::move(described)) {}

void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace crnepi
