#include "gtpinch/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtpinch/error.hpp"
#include "gtpinch/spectral.hpp"

namespace gtpinch {

namespace {

void require_square(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << "matrix is " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::NotSquare, os.str());
    }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimensions " << a.dim() << " and " << b.dim();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

// Largest |eigenvalue| of a Hermitian matrix from its ascending spectrum.
double radius(const RealVector& w) {
    return w.size() == 0 ? 0.0 : std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

}  // namespace

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& m) {
    require_square(m);
    const Index d = m.rows();
    ComplexMatrix out(d, d);
    for (Index j = 0; j < d; ++j) {
        out(j, j) = Complex(m(j, j).real(), 0.0);
        for (Index i = 0; i < j; ++i) {
            const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix(std::move(out));
}

HermitianMatrix construct_hermitian(const ComplexMatrix& raw, const NumericPolicy& policy) {
    policy.validate();
    require_square(raw);
    if (raw.rows() == 0) {
        throw Error(ErrorKind::InvalidArgument, "matrix dimension must be positive");
    }
    for (Index j = 0; j < raw.cols(); ++j) {
        for (Index i = 0; i < raw.rows(); ++i) {
            if (!std::isfinite(raw(i, j).real()) || !std::isfinite(raw(i, j).imag())) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") is not finite";
                throw Error(ErrorKind::NonFinite, os.str());
            }
        }
    }
    const double asymmetry = (raw - raw.adjoint()).norm();
    const double tol = policy.herm_tol * (1.0 + raw.norm());
    if (asymmetry > tol) {
        std::ostringstream os;
        os << "asymmetry ||M - M^H||_F = " << asymmetry << " exceeds " << tol;
        throw Error(ErrorKind::NotHermitian, os.str());
    }
    return HermitianMatrix::symmetrize(raw);
}

HermitianMatrix construct_hermitian(const ComplexGrid& raw, const NumericPolicy& policy) {
    const auto d = static_cast<Index>(raw.size());
    ComplexMatrix m(d, d);
    for (Index i = 0; i < d; ++i) {
        const auto& row = raw[static_cast<std::size_t>(i)];
        if (static_cast<Index>(row.size()) != d) {
            std::ostringstream os;
            os << "row " << i << " has " << row.size() << " entries, expected " << d;
            throw Error(ErrorKind::NotSquare, os.str());
        }
        for (Index j = 0; j < d; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
    }
    return construct_hermitian(m, policy);
}

HermitianMatrix identity(Index dim) { return HermitianMatrix::symmetrize(ComplexMatrix::Identity(dim, dim)); }

HermitianMatrix zeros(Index dim) { return HermitianMatrix::symmetrize(ComplexMatrix::Zero(dim, dim)); }

HermitianMatrix diagonal(const std::vector<double>& entries) {
    const auto d = static_cast<Index>(entries.size());
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return HermitianMatrix::symmetrize(m);
}

double trace(const HermitianMatrix& a) { return a.matrix().trace().real(); }

Complex trace(const ComplexMatrix& a) { return a.trace(); }

ComplexMatrix matmul(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a, b);
    return a.matrix() * b.matrix();
}

HermitianMatrix add(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a, b);
    return HermitianMatrix::symmetrize(a.matrix() + b.matrix());
}

HermitianMatrix subtract(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a, b);
    return HermitianMatrix::symmetrize(a.matrix() - b.matrix());
}

HermitianMatrix scale(double c, const HermitianMatrix& a) { return HermitianMatrix::symmetrize(c * a.matrix()); }

ComplexMatrix scale(Complex c, const HermitianMatrix& a) { return c * a.matrix(); }

double frobenius_norm(const HermitianMatrix& a) { return a.matrix().norm(); }

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a, b);
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
}

bool is_psd(const HermitianMatrix& a, const NumericPolicy& policy) {
    const RealVector w = eigvalsh(a);
    return w(0) >= -policy.psd_tol * std::max(1.0, radius(w));
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, const NumericPolicy& policy) {
    require_same_dim(a, b);
    return is_psd(subtract(b, a), policy);
}

}  // namespace gtpinch
