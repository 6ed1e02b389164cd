#include "gtpinch/error.hpp"

namespace gtpinch {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::BadPartition: return "BadPartition";
        case ErrorKind::SizeOverflow: return "SizeOverflow";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace gtpinch
