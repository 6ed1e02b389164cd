#include "gtpinch/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtpinch/error.hpp"

namespace gtpinch {

HermitianMatrix apply_spectral_function(const RealFunction& f, const SpectralDecomposition& d) {
    RealVector w(d.source_dim());
    Index column = 0;
    for (const auto& p : d.pairs()) {
        const double value = f(p.lambda);
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "function is not finite at eigenvalue " << p.lambda;
            throw Error(ErrorKind::DomainError, os.str());
        }
        w.segment(column, p.multiplicity).setConstant(value);
        column += p.multiplicity;
    }
    const ComplexMatrix& v = d.eigenbasis();
    return HermitianMatrix::symmetrize(v * w.cast<Complex>().asDiagonal() * v.adjoint());
}

HermitianMatrix apply_spectral_function(const RealFunction& f, const HermitianMatrix& a,
                                        const NumericPolicy& policy) {
    return apply_spectral_function(f, decompose(a, policy));
}

HermitianMatrix herm_exp(const SpectralDecomposition& d) {
    return apply_spectral_function([](double x) { return std::exp(x); }, d);
}

HermitianMatrix herm_exp(const HermitianMatrix& a, const NumericPolicy& policy) {
    return herm_exp(decompose(a, policy));
}

bool is_positive_definite(const SpectralDecomposition& d, const NumericPolicy& policy) {
    return d.min_eigenvalue() > policy.psd_tol * std::max(1.0, d.spectral_radius());
}

HermitianMatrix herm_log(const SpectralDecomposition& d, const NumericPolicy& policy) {
    if (!is_positive_definite(d, policy)) {
        std::ostringstream os;
        os << "smallest eigenvalue " << d.min_eigenvalue() << " is not positive";
        throw Error(ErrorKind::NotPositiveDefinite, os.str());
    }
    return apply_spectral_function([](double x) { return std::log(x); }, d);
}

HermitianMatrix herm_log(const HermitianMatrix& a, const NumericPolicy& policy) {
    return herm_log(decompose(a, policy), policy);
}

double trace_exp(const HermitianMatrix& a) {
    return eigvalsh(a).array().exp().sum();
}

double log_trace_exp(const HermitianMatrix& a) {
    const RealVector w = eigvalsh(a);
    const double top = w.maxCoeff();
    return top + std::log((w.array() - top).exp().sum());
}

}  // namespace gtpinch
