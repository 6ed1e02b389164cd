#include "gtpinch/pinching.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gtpinch/error.hpp"

namespace gtpinch {

namespace {

constexpr double kLemmaTol = 1e-10;

void require_dim(const PinchOperator& op, const HermitianMatrix& x) {
    if (x.dim() != op.dim()) {
        std::ostringstream os;
        os << "operand has dimension " << x.dim() << ", pinching reference has " << op.dim();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

}  // namespace

ComplexMatrix block_diagonal_part(const ComplexMatrix& m, const std::vector<Index>& partition) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, "block pinching needs a square matrix");
    Index total = 0;
    for (Index size : partition) {
        if (size < 1) throw Error(ErrorKind::BadPartition, "block sizes must be positive");
        total += size;
    }
    if (total != m.rows()) {
        std::ostringstream os;
        os << "block sizes sum to " << total << ", matrix dimension is " << m.rows();
        throw Error(ErrorKind::BadPartition, os.str());
    }
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    Index offset = 0;
    for (Index size : partition) {
        out.block(offset, offset, size, size) = m.block(offset, offset, size, size);
        offset += size;
    }
    return out;
}

PinchOperator::PinchOperator(SpectralDecomposition base)
    : base_(std::move(base)), reference_(base_.reconstruct()) {}

PinchOperator::PinchOperator(const HermitianMatrix& reference, const NumericPolicy& policy)
    : base_(decompose(reference, policy)), reference_(reference) {}

HermitianMatrix pinch(const PinchOperator& op, const HermitianMatrix& x) {
    require_dim(op, x);
    const ComplexMatrix& v = op.base().eigenbasis();
    const ComplexMatrix rotated = v.adjoint() * x.matrix() * v;
    return HermitianMatrix::symmetrize(v * block_diagonal_part(rotated, op.base().block_sizes()) * v.adjoint());
}

DephasingFamily dephasing_family(const PinchOperator& op) {
    const Index n = op.n();
    const Index d = op.dim();
    const auto& pairs = op.base().pairs();
    DephasingFamily family;
    family.unitaries.reserve(static_cast<std::size_t>(n));
    for (Index y = 1; y <= n; ++y) {
        ComplexMatrix u = ComplexMatrix::Zero(d, d);
        for (Index u_idx = 1; u_idx <= n; ++u_idx) {
            // Reduce y*u mod n first so that whole turns give exactly 1.
            const Index k = (y * u_idx) % n;
            const Complex phase =
                k == 0 ? Complex(1.0, 0.0)
                       : std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
            const auto& basis = pairs[static_cast<std::size_t>(u_idx - 1)].basis;
            u += phase * (basis * basis.adjoint());
        }
        family.unitaries.push_back(std::move(u));
    }
    return family;
}

HermitianMatrix pinch_via_mixture(const DephasingFamily& family, const HermitianMatrix& x) {
    if (family.unitaries.empty()) throw Error(ErrorKind::InvalidArgument, "empty dephasing family");
    ComplexMatrix sum = ComplexMatrix::Zero(x.dim(), x.dim());
    for (const auto& u : family.unitaries) {
        if (u.rows() != x.dim()) throw Error(ErrorKind::DimensionMismatch, "unitary and operand differ in size");
        sum += u * x.matrix() * u.adjoint();
    }
    return HermitianMatrix::symmetrize(sum / static_cast<double>(family.unitaries.size()));
}

HermitianMatrix pinch_via_mixture(const PinchOperator& op, const HermitianMatrix& x) {
    require_dim(op, x);
    return pinch_via_mixture(dephasing_family(op), x);
}

double lemma_scale(const PinchOperator& op, const HermitianMatrix& x) {
    return (1.0 + op.reference().matrix().norm()) * (1.0 + x.matrix().norm());
}

LemmaCheck verify_lemma1(const PinchOperator& op, const HermitianMatrix& x) {
    const HermitianMatrix p = pinch(op, x);
    const ComplexMatrix a = op.reference().matrix();
    const double residual = (p.matrix() * a - a * p.matrix()).norm();
    const double tol = kLemmaTol * lemma_scale(op, x);
    return {residual <= tol, residual, tol};
}

LemmaCheck verify_lemma2(const PinchOperator& op, const HermitianMatrix& x) {
    const HermitianMatrix p = pinch(op, x);
    const ComplexMatrix a = op.reference().matrix();
    const double residual = std::abs((p.matrix() * a).trace() - (x.matrix() * a).trace());
    const double tol = kLemmaTol * lemma_scale(op, x);
    return {residual <= tol, residual, tol};
}

LemmaCheck verify_lemma3(const PinchOperator& op, const HermitianMatrix& x, const NumericPolicy& policy) {
    require_dim(op, x);
    if (!is_psd(x, policy)) throw Error(ErrorKind::NotPSD, "pinching inequality needs a positive semidefinite operand");
    const HermitianMatrix lower = scale(1.0 / static_cast<double>(op.n()), x);
    const HermitianMatrix diff = subtract(pinch(op, x), lower);
    const RealVector w = eigvalsh(diff);
    const double radius = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
    const double tol = policy.psd_tol * std::max(1.0, radius);
    return {-w(0) <= tol, -w(0), tol};
}

LemmaCheck verify_mixture(const PinchOperator& op, const HermitianMatrix& x) {
    const HermitianMatrix direct = pinch(op, x);
    const HermitianMatrix mixed = pinch_via_mixture(op, x);
    const double residual = (direct.matrix() - mixed.matrix()).norm();
    const double tol = kLemmaTol * (1.0 + direct.matrix().norm());
    return {residual <= tol, residual, tol};
}

}  // namespace gtpinch
