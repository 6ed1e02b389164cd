#pragma once

namespace gtpinch {

/// Tolerances used by every numerical decision in the library.
///
/// All values are relative: each is multiplied by a scale appropriate to the
/// comparison (matrix norm, spectral radius) at the point of use.
struct NumericPolicy {
    double herm_tol = 1e-10;      ///< accepted asymmetry for near-Hermitian input
    double cluster_tol = 1e-8;    ///< eigenvalue gap below which values merge
    double psd_tol = 1e-9;        ///< negative-eigenvalue slack for PSD/order tests
    double residual_tol = 1e-9;   ///< eigendecomposition residual bound

    /// Throws Error(InvalidArgument) unless every tolerance is finite and > 0.
    void validate() const;
};

}  // namespace gtpinch
