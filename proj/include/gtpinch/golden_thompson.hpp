#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtpinch/tensor.hpp"

namespace gtpinch {

/// One named numeric check: passes iff measured <= tolerance.
struct CheckRecord {
    std::string name;
    bool pass;
    double measured;
    double tolerance;
};

struct GTReport {
    double lhs;  ///< tr exp(A + B)
    double rhs;  ///< tr(exp A exp B)
    double gap;  ///< rhs - lhs
    bool holds;  ///< gap >= -1e-9 (|lhs| + |rhs|)
    bool commuting;
    double commutator;  ///< ||AB - BA||_F
};

/// Direct Golden-Thompson check for Hermitian A, B of equal dimension.
GTReport gt_check(const HermitianMatrix& a, const HermitianMatrix& b, const NumericPolicy& policy = {});

struct ChainOptions {
    Index cap = kDefaultDimensionCap;  ///< largest d^m materialized
    bool force_full_tier = false;      ///< throw SizeOverflow instead of skipping
};

/// Finite-m record of the pinching proof chain for positive definite A, B.
///
/// The pinching reference is B^{(x)m}, so the spectrum term is
/// log |spec(B^{(x)m})| / m.
struct ChainTrace {
    int m;
    double s0;                            ///< log tr exp(log A + log B)
    std::optional<double> s0_tensorized;  ///< (1/m) log tr exp(log A^m + log B^m)
    std::optional<double> t_pinched;      ///< (1/m) log tr exp(log P[A^m] + log B^m)
    double target;                        ///< log tr(AB)
    double target_imag;                   ///< Im tr(AB), rounding residue
    double bound;                         ///< target + (1/m) log |spec|
    double gap_bound;                     ///< (1/m) log C(m+n-1, n-1)
    SpectrumCount spectrum;               ///< |spec(B^{(x)m})|
    bool full_matrix_tier;
    double scale;                         ///< (1 + ||A||_F)(1 + ||B||_F)
};

ChainTrace chain_trace(const HermitianMatrix& a, const HermitianMatrix& b, int m,
                       const NumericPolicy& policy = {}, const ChainOptions& options = {});

/// Invariant checks of a single trace (tensorization, pinching bound,
/// collapse, envelope, imaginary residue).
std::vector<CheckRecord> chain_checks(const ChainTrace& t);

/// One trace per m. Entries are computed concurrently but returned in
/// m_list order. m_list must be non-empty and strictly ascending.
std::vector<ChainTrace> convergence_study(const HermitianMatrix& a, const HermitianMatrix& b,
                                          const std::vector<int>& m_list,
                                          const NumericPolicy& policy = {},
                                          const ChainOptions& options = {});

/// Checks across a study: bound non-increasing in m.
std::vector<CheckRecord> convergence_checks(const std::vector<ChainTrace>& traces);

/// tr exp(log A + log B) <= |spec(B^{(x)m})|^{1/m} tr(AB), the finite-m
/// statement whose m -> infinity limit is Golden-Thompson.
struct FiniteCertificate {
    int m;
    double lhs;
    double rhs;
    double spectrum_factor;  ///< |spec|^{1/m}
    bool holds;
};

FiniteCertificate gt_from_chain(const HermitianMatrix& a, const HermitianMatrix& b, int m,
                                const NumericPolicy& policy = {});

/// Golden-Thompson for general Hermitian A, B via gt_from_chain(exp A, exp B, m).
FiniteCertificate gt_via_chain(const HermitianMatrix& a, const HermitianMatrix& b, int m,
                               const NumericPolicy& policy = {});

}  // namespace gtpinch
