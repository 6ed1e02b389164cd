#pragma once

#include <vector>

#include "gtpinch/spectral.hpp"

namespace gtpinch {

/// Zeroes every off-diagonal block of `m` under the given block partition.
/// m - block_diagonal_part(m, p) is the off-diagonal remainder.
/// Throws NotSquare or BadPartition.
ComplexMatrix block_diagonal_part(const ComplexMatrix& m, const std::vector<Index>& partition);

/// The spectral pinching map X -> sum_i P_i X P_i of a reference matrix.
class PinchOperator {
public:
    explicit PinchOperator(SpectralDecomposition base);
    PinchOperator(const HermitianMatrix& reference, const NumericPolicy& policy = {});

    const SpectralDecomposition& base() const noexcept { return base_; }
    /// The matrix the operator was built from (the reconstruction when built
    /// from a decomposition).
    const HermitianMatrix& reference() const noexcept { return reference_; }
    Index dim() const noexcept { return base_.source_dim(); }
    /// Number of distinct eigenvalues of the reference matrix.
    Index n() const noexcept { return base_.distinct_count(); }

private:
    SpectralDecomposition base_;
    HermitianMatrix reference_;
};

/// sum_i P_i X P_i, evaluated as V blockdiag(V^H X V) V^H in the eigenbasis.
HermitianMatrix pinch(const PinchOperator& op, const HermitianMatrix& x);

/// U_y = sum_u exp(2 pi i y u / n) P_u for y = 1..n, u = 1..n ascending.
struct DephasingFamily {
    std::vector<ComplexMatrix> unitaries;
};

DephasingFamily dephasing_family(const PinchOperator& op);

/// (1/n) sum_y U_y X U_y^H.
HermitianMatrix pinch_via_mixture(const PinchOperator& op, const HermitianMatrix& x);
HermitianMatrix pinch_via_mixture(const DephasingFamily& family, const HermitianMatrix& x);

struct LemmaCheck {
    bool holds;
    double residual;   ///< measured defect (0 for an exact identity)
    double tolerance;  ///< threshold the residual was compared against
};

/// (1 + ||A||_F)(1 + ||X||_F), the scale of every lemma tolerance.
double lemma_scale(const PinchOperator& op, const HermitianMatrix& x);

/// Pinched X commutes with the reference: ||P[X] A - A P[X]||_F <= 1e-10 scale.
LemmaCheck verify_lemma1(const PinchOperator& op, const HermitianMatrix& x);
/// Pinching preserves tr(X A): |tr(P[X] A) - tr(X A)| <= 1e-10 scale.
LemmaCheck verify_lemma2(const PinchOperator& op, const HermitianMatrix& x);
/// Pinching inequality X / n <= P[X] in Loewner order. Throws NotPSD unless
/// x is positive semidefinite. residual is -min eig(P[X] - X/n) (<= 0 when
/// the order holds strictly).
LemmaCheck verify_lemma3(const PinchOperator& op, const HermitianMatrix& x, const NumericPolicy& policy = {});
/// ||pinch - pinch_via_mixture||_F <= 1e-10 (1 + ||pinch||_F).
LemmaCheck verify_mixture(const PinchOperator& op, const HermitianMatrix& x);

}  // namespace gtpinch
