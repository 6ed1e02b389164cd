#pragma once

#include <cstdint>
#include <vector>

#include "gtpinch/matrix.hpp"

namespace gtpinch {

/// Counter-based generator: draw k of stream (seed, stream) is a pure
/// function of (seed, stream, k), so trials can be generated in any order
/// or in parallel and still reproduce bit for bit.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;
    /// Standard normal via Box-Muller.
    double normal() noexcept;
    /// Complex normal with E|z|^2 = 1.
    Complex complex_normal() noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// G G^H + floor * I for a seeded complex Gaussian G scaled by 1/sqrt(dim).
/// Positive definite with smallest eigenvalue >= floor.
HermitianMatrix random_pd(Index dim, std::uint64_t seed, double floor);

/// (G + G^H) / 2 scaled so entries have standard deviation about `scale`.
HermitianMatrix random_hermitian(Index dim, std::uint64_t seed, double scale = 1.0);

/// G G^H with G of shape dim x rank; singular whenever rank < dim.
HermitianMatrix random_psd(Index dim, Index rank, std::uint64_t seed);

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
ComplexMatrix random_unitary(Index dim, std::uint64_t seed);

/// U diag(eigenvalues) U^H for a seeded random unitary U.
HermitianMatrix with_spectrum(const std::vector<double>& eigenvalues, std::uint64_t seed);

}  // namespace gtpinch
