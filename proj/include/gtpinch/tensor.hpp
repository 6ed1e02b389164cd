#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gtpinch/spectral.hpp"

namespace gtpinch {

inline constexpr Index kDefaultDimensionCap = 4096;
/// Largest number of eigenvalue multisets count_distinct_spectrum enumerates.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Kronecker product. Throws SizeOverflow if the result dimension exceeds cap.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Index cap = kDefaultDimensionCap);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b, Index cap = kDefaultDimensionCap);

/// m-fold Kronecker power. Throws SizeOverflow if dim^m exceeds cap and
/// InvalidArgument for m < 1.
HermitianMatrix tensor_power(const HermitianMatrix& a, int m, Index cap = kDefaultDimensionCap);

/// dim^m if it does not exceed cap, otherwise nullopt.
std::optional<Index> checked_power(Index dim, int m, Index cap);

struct BinomialBound {
    std::optional<std::uint64_t> exact;  ///< C(m+n-1, n-1) when it fits in 64 bits
    double log_value;                    ///< log C(m+n-1, n-1) via lgamma
};

/// Number of size-m multisets over n symbols.
BinomialBound binomial_bound(int m, Index n_distinct);

struct SpectrumCount {
    int m;
    std::uint64_t distinct_count;
    /// False when the multiset count exceeded the enumeration cap; in that
    /// case distinct_count is the binomial upper bound, not an exact count.
    bool exact;
    double log_bound;  ///< log C(m+n-1, n-1)
    Index d_distinct;  ///< n, distinct eigenvalues of the base
    /// Same bound over all d = dim(base) symbols, log C(m+d-1, d-1) >= log_bound.
    /// Equal to log_bound when only the distinct eigenvalues are known.
    Index base_dim;
    double log_bound_dim;
};

/// Number of distinct eigenvalues of A^{(x)m} computed from the base
/// decomposition alone: every size-m multiset of base eigenvalues is
/// enumerated, its log-product computed, and the sums clustered with
/// absolute tolerance m * cluster_tol. Throws NotPositiveDefinite.
SpectrumCount count_distinct_spectrum(const SpectralDecomposition& base, int m,
                                      const NumericPolicy& policy = {},
                                      std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Same enumeration starting from the logarithms of the distinct base
/// eigenvalues (ascending, strictly increasing).
SpectrumCount count_distinct_log_spectrum(const std::vector<double>& log_eigenvalues, int m,
                                          const NumericPolicy& policy = {},
                                          std::uint64_t enumeration_cap = kDefaultEnumerationCap);

}  // namespace gtpinch
