#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sspdo {

enum class ErrorCode {
    DimensionMismatch,
    ZeroRowViolation,
    SingularMatrix,
    UnboundedAbove,
    InconclusiveCertification,
    NonIntervalFeasibility,
    DegreeTooHigh,
    StructureError,
    RepeatedAbscissae,
    NumericalCycle,
    NonpositiveC,
    NonfiniteState,
    IndexOutOfRange,
    ThetaOutOfRange,
    ExactSolutionMissing,
    InvalidArgument,
    InvalidStepSize,
    ParseError,
    IoError,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroRowViolation: return "ZeroRowViolation";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::UnboundedAbove: return "UnboundedAbove";
        case ErrorCode::InconclusiveCertification: return "InconclusiveCertification";
        case ErrorCode::NonIntervalFeasibility: return "NonIntervalFeasibility";
        case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
        case ErrorCode::StructureError: return "StructureError";
        case ErrorCode::RepeatedAbscissae: return "RepeatedAbscissae";
        case ErrorCode::NumericalCycle: return "NumericalCycle";
        case ErrorCode::NonpositiveC: return "NonpositiveC";
        case ErrorCode::NonfiniteState: return "NonfiniteState";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
        case ErrorCode::ExactSolutionMissing: return "ExactSolutionMissing";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidStepSize: return "InvalidStepSize";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sspdo
