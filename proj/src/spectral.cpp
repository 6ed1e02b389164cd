#include "gtpinch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gtpinch/error.hpp"

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace gtpinch {

namespace {

void check_info(const char* routine, lapack_int info) {
    if (info > 0) {
        std::ostringstream os;
        os << routine << " failed to converge (info " << info << ")";
        throw Error(ErrorKind::ConvergenceFailure, os.str());
    }
    if (info < 0) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(routine) + " rejected argument " + std::to_string(-info));
    }
}

RealVector eigenvalues_only(ComplexMatrix& work) {
    const auto n = static_cast<lapack_int>(work.rows());
    RealVector w(work.rows());
    check_info("zheevd", LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, w.data()));
    return w;
}

// MRRR rather than divide-and-conquer: some OpenBLAS builds pick AVX-512
// kernels whose zheevd eigenvectors are silently wrong above n ~ 400.
EigenSystem eigenpairs(ComplexMatrix& work) {
    const auto n = static_cast<lapack_int>(work.rows());
    EigenSystem out{RealVector(work.rows()), ComplexMatrix(work.rows(), work.rows())};
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    check_info("zheevr", LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'U', n, work.data(), n, 0.0, 0.0, 0, 0,
                                        0.0, &found, out.values.data(), out.vectors.data(), n,
                                        support.data()));
    if (found != n) {
        throw Error(ErrorKind::ConvergenceFailure,
                    "zheevr returned " + std::to_string(found) + " of " + std::to_string(n) + " eigenpairs");
    }
    return out;
}

}  // namespace

EigenSystem eigh(const HermitianMatrix& a, const NumericPolicy& policy) {
    ComplexMatrix work = a.matrix();
    auto [w, v] = eigenpairs(work);

    const double residual = (a.matrix() * v - v * w.cast<Complex>().asDiagonal()).norm();
    const double orthogonality = (v.adjoint() * v - ComplexMatrix::Identity(a.dim(), a.dim())).norm();
    const double tol = policy.residual_tol * (1.0 + a.matrix().norm());
    if (residual > tol || orthogonality > policy.residual_tol) {
        std::ostringstream os;
        os << "eigendecomposition residual " << residual << " (limit " << tol << "), orthogonality "
           << orthogonality << " (limit " << policy.residual_tol << ")";
        throw Error(ErrorKind::ConvergenceFailure, os.str());
    }
    return {std::move(w), std::move(v)};
}

RealVector eigvalsh(const HermitianMatrix& a) {
    ComplexMatrix work = a.matrix();
    return eigenvalues_only(work);
}

std::vector<std::pair<Index, Index>> cluster_ascending(const RealVector& values, double gap_tol) {
    std::vector<std::pair<Index, Index>> clusters;
    const Index n = values.size();
    Index begin = 0;
    for (Index i = 1; i <= n; ++i) {
        if (i == n || values(i) - values(i - 1) > gap_tol) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }
    return clusters;
}

double eigenvalue_gap_tolerance(const RealVector& ascending, const NumericPolicy& policy) {
    double radius = 0.0;
    if (ascending.size() > 0) {
        radius = std::max(std::abs(ascending(0)), std::abs(ascending(ascending.size() - 1)));
    }
    return policy.cluster_tol * std::max(1.0, radius);
}

HermitianMatrix SpectralPair::projector() const {
    return HermitianMatrix::symmetrize(basis * basis.adjoint());
}

SpectralDecomposition::SpectralDecomposition(Index source_dim, std::vector<SpectralPair> pairs)
    : source_dim_(source_dim), pairs_(std::move(pairs)), basis_(source_dim, source_dim) {
    if (pairs_.empty()) throw Error(ErrorKind::InvalidArgument, "decomposition has no eigenvalues");
    Index column = 0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto& p = pairs_[i];
        if (p.multiplicity < 1 || p.basis.cols() != p.multiplicity || p.basis.rows() != source_dim) {
            throw Error(ErrorKind::InvalidArgument, "spectral pair basis does not match its multiplicity");
        }
        if (i > 0 && !(p.lambda > pairs_[i - 1].lambda)) {
            throw Error(ErrorKind::InvalidArgument, "eigenvalues must be strictly increasing");
        }
        if (column + p.multiplicity > source_dim) break;
        basis_.middleCols(column, p.multiplicity) = p.basis;
        column += p.multiplicity;
    }
    if (column != source_dim) {
        throw Error(ErrorKind::InvalidArgument, "multiplicities do not sum to the dimension");
    }
}

std::vector<Index> SpectralDecomposition::block_sizes() const {
    std::vector<Index> sizes;
    sizes.reserve(pairs_.size());
    for (const auto& p : pairs_) sizes.push_back(p.multiplicity);
    return sizes;
}

double SpectralDecomposition::spectral_radius() const {
    return std::max(std::abs(pairs_.front().lambda), std::abs(pairs_.back().lambda));
}

HermitianMatrix SpectralDecomposition::reconstruct() const {
    RealVector w(source_dim_);
    Index column = 0;
    for (const auto& p : pairs_) {
        w.segment(column, p.multiplicity).setConstant(p.lambda);
        column += p.multiplicity;
    }
    return HermitianMatrix::symmetrize(basis_ * w.cast<Complex>().asDiagonal() * basis_.adjoint());
}

SpectralDecomposition decompose(const HermitianMatrix& a, const NumericPolicy& policy) {
    EigenSystem es = eigh(a, policy);
    const auto clusters = cluster_ascending(es.values, eigenvalue_gap_tolerance(es.values, policy));

    std::vector<SpectralPair> pairs;
    pairs.reserve(clusters.size());
    for (const auto& [begin, end] : clusters) {
        const Index count = end - begin;
        const double mean = es.values.segment(begin, count).mean();
        pairs.push_back({mean, count, es.vectors.middleCols(begin, count)});
    }
    return SpectralDecomposition(a.dim(), std::move(pairs));
}

Index distinct_eigenvalue_count(const HermitianMatrix& a, const NumericPolicy& policy) {
    const RealVector w = eigvalsh(a);
    return static_cast<Index>(cluster_ascending(w, eigenvalue_gap_tolerance(w, policy)).size());
}

ProjectorResiduals projector_residuals(const SpectralDecomposition& d, const HermitianMatrix& source) {
    const Index n = d.source_dim();
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(d.pairs().size());
    for (const auto& p : d.pairs()) projectors.push_back(p.basis * p.basis.adjoint());

    ProjectorResiduals r{0.0, 0.0, 0.0, 0.0};
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        sum += projectors[i];
        r.idempotence = std::max(r.idempotence, (projectors[i] * projectors[i] - projectors[i]).norm());
        for (std::size_t j = 0; j < projectors.size(); ++j) {
            if (i != j) r.orthogonality = std::max(r.orthogonality, (projectors[i] * projectors[j]).norm());
        }
    }
    r.completeness = (sum - ComplexMatrix::Identity(n, n)).norm();
    r.reconstruction = (d.reconstruct().matrix() - source.matrix()).norm();
    return r;
}

}  // namespace gtpinch
