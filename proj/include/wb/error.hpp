#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wb {

/// Every failure the library can report. The CLI maps these onto exit codes
/// and prints the variant name, so keep the names stable.
enum class ErrorKind {
    InvalidArgument,
    ParseError,
    UnknownGroup,
    NotAGroup,
    OrderBoundExceeded,
    RingMismatch,
    SchemaMismatch,
    InvalidTruncation,
    NonInvertibleDiagonal,
    NotInImage,
    NonIntegralConstant,
    NotBinomial,
    NotInvertibleIndex,
    TruncationTooSmall,
    // The three below signal a bug in the library, never bad input.
    IntegralityViolation,
    NumericalityViolation,
    NonExactDivision,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownGroup: return "UnknownGroup";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::InvalidTruncation: return "InvalidTruncation";
    case ErrorKind::NonInvertibleDiagonal: return "NonInvertibleDiagonal";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NonIntegralConstant: return "NonIntegralConstant";
    case ErrorKind::NotBinomial: return "NotBinomial";
    case ErrorKind::NotInvertibleIndex: return "NotInvertibleIndex";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::NumericalityViolation: return "NumericalityViolation";
    case ErrorKind::NonExactDivision: return "NonExactDivision";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace wb
