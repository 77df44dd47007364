#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpa2relu {

enum class ErrorCode {
    SchemaError,
    DanglingRef,
    InvalidInput,
    NoPieceFound,
    OnBoundary,
    RetriesExhausted,
    GeneralPositionViolation,
    DuplicateDirection,
    SamePieceBothSides,
    ContinuityViolation,
    NoMergeablePair,
    NotCrossCase,
    MalformedFan,
    EmptyTermList,
    SamplingStalled,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::DanglingRef: return "DANGLING_REF";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::NoPieceFound: return "NO_PIECE_FOUND";
    case ErrorCode::OnBoundary: return "ON_BOUNDARY";
    case ErrorCode::RetriesExhausted: return "RETRIES_EXHAUSTED";
    case ErrorCode::GeneralPositionViolation: return "GENERAL_POSITION_VIOLATION";
    case ErrorCode::DuplicateDirection: return "DUPLICATE_DIRECTION";
    case ErrorCode::SamePieceBothSides: return "SAME_PIECE_BOTH_SIDES";
    case ErrorCode::ContinuityViolation: return "CONTINUITY_VIOLATION";
    case ErrorCode::NoMergeablePair: return "NO_MERGEABLE_PAIR";
    case ErrorCode::NotCrossCase: return "NOT_CROSS_CASE";
    case ErrorCode::MalformedFan: return "MALFORMED_FAN";
    case ErrorCode::EmptyTermList: return "EMPTY_TERMLIST";
    case ErrorCode::SamplingStalled: return "SAMPLING_STALLED";
    }
    return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace cpa2relu
