#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gtpinch/policy.hpp"

namespace gtpinch {

using Complex = std::complex<double>;
using Index = Eigen::Index;
/// General dense complex matrix (products, unitaries, partial results).
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Dense complex matrix that is exactly Hermitian.
///
/// Every instance satisfies m(i,j) == conj(m(j,i)) bit for bit and has a
/// purely real diagonal. Instances are built through construct_hermitian()
/// for external data or symmetrize() for results of internal computations
/// that are Hermitian up to rounding.
class HermitianMatrix {
public:
    /// Averages m with its adjoint without any tolerance check.
    static HermitianMatrix symmetrize(const ComplexMatrix& m);

    Index dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(Index i, Index j) const { return m_(i, j); }

    friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
        return a.m_ == b.m_;
    }

private:
    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

using ComplexGrid = std::vector<std::vector<Complex>>;

/// Input gate for externally supplied matrices.
///
/// Accepts raw when ||raw - raw^H||_F <= herm_tol * (1 + ||raw||_F) and
/// returns (raw + raw^H) / 2. Throws NotSquare, NonFinite or NotHermitian.
HermitianMatrix construct_hermitian(const ComplexMatrix& raw, const NumericPolicy& policy = {});
HermitianMatrix construct_hermitian(const ComplexGrid& raw, const NumericPolicy& policy = {});

HermitianMatrix identity(Index dim);
HermitianMatrix zeros(Index dim);
HermitianMatrix diagonal(const std::vector<double>& entries);

double trace(const HermitianMatrix& a);
Complex trace(const ComplexMatrix& a);

ComplexMatrix matmul(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix add(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix subtract(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix scale(double c, const HermitianMatrix& a);
ComplexMatrix scale(Complex c, const HermitianMatrix& a);

double frobenius_norm(const HermitianMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

/// ||AB - BA||_F.
double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b);

/// True iff b - a is positive semidefinite: its smallest eigenvalue is at
/// least -psd_tol * max(1, spectral radius of b - a).
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, const NumericPolicy& policy = {});

/// Same slack rule as loewner_leq applied to a itself.
bool is_psd(const HermitianMatrix& a, const NumericPolicy& policy = {});

}  // namespace gtpinch
