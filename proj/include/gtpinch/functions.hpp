#pragma once

#include <functional>

#include "gtpinch/spectral.hpp"

namespace gtpinch {

using RealFunction = std::function<double(double)>;

/// sum_i f(lambda_i) P_i over the clustered decomposition.
/// Throws DomainError when f is not finite at some eigenvalue.
HermitianMatrix apply_spectral_function(const RealFunction& f, const SpectralDecomposition& d);
HermitianMatrix apply_spectral_function(const RealFunction& f, const HermitianMatrix& a,
                                        const NumericPolicy& policy = {});

HermitianMatrix herm_exp(const HermitianMatrix& a, const NumericPolicy& policy = {});
HermitianMatrix herm_exp(const SpectralDecomposition& d);

/// Principal logarithm of a positive definite matrix.
/// Throws NotPositiveDefinite when some clustered eigenvalue is
/// <= psd_tol * max(1, spectral radius).
HermitianMatrix herm_log(const HermitianMatrix& a, const NumericPolicy& policy = {});
HermitianMatrix herm_log(const SpectralDecomposition& d, const NumericPolicy& policy = {});

bool is_positive_definite(const SpectralDecomposition& d, const NumericPolicy& policy = {});

/// tr exp(A), computed from eigenvalues only.
double trace_exp(const HermitianMatrix& a);

/// log tr exp(A), shifted by the largest eigenvalue so it stays finite
/// where trace_exp overflows.
double log_trace_exp(const HermitianMatrix& a);

}  // namespace gtpinch
