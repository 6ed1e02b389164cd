#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtpinch::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Entry point shared by the gtpinch executable and the tests. `args`
/// excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3", "2..6" or "2,4,5" into an ascending list of dimensions.
std::vector<int> parse_dims(const std::string& text);
/// Parses a comma list of strictly ascending positive powers.
std::vector<int> parse_powers(const std::string& text);

}  // namespace gtpinch::cli
