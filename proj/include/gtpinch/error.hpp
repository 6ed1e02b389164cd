#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtpinch {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    NonFinite,
    DimensionMismatch,
    ConvergenceFailure,
    DomainError,
    NotPositiveDefinite,
    NotPSD,
    BadPartition,
    SizeOverflow,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type. what() is prefixed
// with the kind name, e.g. "NotHermitian: asymmetry 1 exceeds 2.6e-10".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gtpinch
