#pragma once

#include <stdexcept>
#include <string>

namespace rankci::app {

/// Process exit codes. Each failure class has its own code so scripts can
/// branch on it.
enum class ErrorCode : int {
    Usage = 2,
    Io = 3,
    MalformedCsv = 4,
    DuplicateLabel = 5,
    DuplicateRank = 6,
    EmptyColumn = 7,
    InvalidMatrix = 8,
    NoCommonRanker = 9,
    MissingEntity = 10,
    Unsupported = 11,
    InvalidScenario = 12,
    Internal = 70,
};

inline const char* code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Usage: return "E_USAGE";
        case ErrorCode::Io: return "E_IO";
        case ErrorCode::MalformedCsv: return "E_MALFORMED_CSV";
        case ErrorCode::DuplicateLabel: return "E_DUPLICATE_LABEL";
        case ErrorCode::DuplicateRank: return "E_DUPLICATE_RANK";
        case ErrorCode::EmptyColumn: return "E_EMPTY_COLUMN";
        case ErrorCode::InvalidMatrix: return "E_INVALID_MATRIX";
        case ErrorCode::NoCommonRanker: return "E_NO_COMMON_RANKER";
        case ErrorCode::MissingEntity: return "E_MISSING_ENTITY";
        case ErrorCode::Unsupported: return "E_UNSUPPORTED";
        case ErrorCode::InvalidScenario: return "E_INVALID_SCENARIO";
        case ErrorCode::Internal: return "E_INTERNAL";
    }
    return "E_INTERNAL";
}

class AppError : public std::runtime_error {
public:
    AppError(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rankci::app
