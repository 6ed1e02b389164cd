#pragma once

#include <utility>
#include <vector>

#include "gtpinch/matrix.hpp"

namespace gtpinch {

struct EigenSystem {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

/// Full Hermitian eigendecomposition. Verifies the residual contract
/// ||AV - V diag(w)||_F <= residual_tol (1 + ||A||_F) and
/// ||V^H V - I||_F <= residual_tol; throws ConvergenceFailure otherwise.
EigenSystem eigh(const HermitianMatrix& a, const NumericPolicy& policy = {});

/// Eigenvalues only, ascending. Much cheaper than eigh() for large inputs.
RealVector eigvalsh(const HermitianMatrix& a);

/// Half-open index ranges [first, second) of an ascending sequence, where
/// neighbours closer than `gap_tol` are merged transitively.
std::vector<std::pair<Index, Index>> cluster_ascending(const RealVector& values, double gap_tol);

/// Gap tolerance used to decide whether two eigenvalues are the same:
/// cluster_tol * max(1, spectral radius).
double eigenvalue_gap_tolerance(const RealVector& ascending, const NumericPolicy& policy);

struct SpectralPair {
    double lambda;        ///< cluster mean
    Index multiplicity;
    ComplexMatrix basis;  ///< dim x multiplicity orthonormal columns

    /// P = basis * basis^H.
    HermitianMatrix projector() const;
};

/// A = sum_i lambda_i P_i over the distinct (clustered) eigenvalues.
class SpectralDecomposition {
public:
    SpectralDecomposition(Index source_dim, std::vector<SpectralPair> pairs);

    Index source_dim() const noexcept { return source_dim_; }
    const std::vector<SpectralPair>& pairs() const noexcept { return pairs_; }
    Index distinct_count() const noexcept { return static_cast<Index>(pairs_.size()); }

    /// Concatenated cluster bases in ascending eigenvalue order (unitary).
    const ComplexMatrix& eigenbasis() const noexcept { return basis_; }
    /// Block sizes of eigenbasis(), one per distinct eigenvalue.
    std::vector<Index> block_sizes() const;

    double min_eigenvalue() const { return pairs_.front().lambda; }
    double spectral_radius() const;

    HermitianMatrix reconstruct() const;

private:
    Index source_dim_;
    std::vector<SpectralPair> pairs_;
    ComplexMatrix basis_;
};

SpectralDecomposition decompose(const HermitianMatrix& a, const NumericPolicy& policy = {});

inline Index distinct_count(const SpectralDecomposition& d) { return d.distinct_count(); }

/// Distinct eigenvalue count of `a` under the same clustering rule as
/// decompose(), computed from eigenvalues only.
Index distinct_eigenvalue_count(const HermitianMatrix& a, const NumericPolicy& policy = {});

/// Frobenius residuals of the projector identities.
struct ProjectorResiduals {
    double completeness;    // ||sum P_i - I||
    double idempotence;     // max_i ||P_i P_i - P_i||
    double orthogonality;   // max_{i != j} ||P_i P_j||
    double reconstruction;  // ||sum lambda_i P_i - A||
};

ProjectorResiduals projector_residuals(const SpectralDecomposition& d, const HermitianMatrix& source);

}  // namespace gtpinch
