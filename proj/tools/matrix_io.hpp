#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtpinch/matrix.hpp"

namespace gtpinch::cli {

/// On-disk matrix: {"dim": d, "re": [[...], ...], "im": [[...], ...]}.
/// "im" is optional and defaults to zeros.
struct MatrixFile {
    Index dim = 0;
    std::vector<std::vector<double>> re;
    std::vector<std::vector<double>> im;
};

/// Malformed document; field() names the offending key, e.g. "re[1][0]".
class FormatError : public std::runtime_error {
public:
    FormatError(std::string field, const std::string& message);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

MatrixFile parse_matrix_file(const std::string& text);
std::string serialize_matrix_file(const MatrixFile& file);

MatrixFile to_matrix_file(const HermitianMatrix& m);
/// Applies the Hermitian input gate (may throw gtpinch::Error).
HermitianMatrix to_hermitian(const MatrixFile& file, const NumericPolicy& policy);

/// Reads and parses a file; throws FormatError (field "file") if unreadable.
MatrixFile read_matrix_file(const std::filesystem::path& path);

/// 64-bit FNV-1a over the little-endian bytes of (dim, re, im), hex encoded.
std::string matrix_digest(const HermitianMatrix& m);

}  // namespace gtpinch::cli
