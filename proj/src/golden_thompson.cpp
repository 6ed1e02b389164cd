#include "gtpinch/golden_thompson.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "gtpinch/error.hpp"
#include "gtpinch/functions.hpp"
#include "gtpinch/pinching.hpp"

namespace gtpinch {

namespace {

constexpr double kGapTol = 1e-9;
constexpr double kCommuteTol = 1e-10;
constexpr double kTensorizationTol = 1e-8;
constexpr double kBoundTol = 1e-8;
constexpr double kCollapseTol = 1e-7;
constexpr double kImagTol = 1e-12;
constexpr double kCertificateTol = 1e-9;

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimensions " << a.dim() << " and " << b.dim();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

void require_power(int m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "tensor power must be at least 1");
}

double pair_scale(const HermitianMatrix& a, const HermitianMatrix& b) {
    return (1.0 + frobenius_norm(a)) * (1.0 + frobenius_norm(b));
}

double log_spectrum(const SpectrumCount& s) {
    return s.exact ? std::log(static_cast<double>(s.distinct_count)) : s.log_bound;
}

std::vector<double> distinct_values(const SpectralDecomposition& d) {
    std::vector<double> out;
    out.reserve(d.pairs().size());
    for (const auto& p : d.pairs()) out.push_back(p.lambda);
    return out;
}

// Shared by gt_from_chain and gt_via_chain: the exponent pair (log A, log B),
// the operands (A, B) themselves, and log-eigenvalues of B for the spectrum.
FiniteCertificate finite_certificate(const HermitianMatrix& log_a, const HermitianMatrix& log_b,
                                     const HermitianMatrix& a, const HermitianMatrix& b,
                                     const std::vector<double>& log_b_values, int m,
                                     const NumericPolicy& policy) {
    const SpectrumCount spectrum = count_distinct_log_spectrum(log_b_values, m, policy);
    const double lhs = trace_exp(add(log_a, log_b));
    const double factor = std::exp(log_spectrum(spectrum) / m);
    const double rhs = factor * trace(matmul(a, b)).real();
    const bool holds = lhs <= rhs + kCertificateTol * (std::abs(lhs) + std::abs(rhs));
    return {m, lhs, rhs, factor, holds};
}

// log(X^{(x)m}) = sum_k I^{(x)k} (x) log X (x) I^{(x)(m-k-1)}. Going through
// the Kronecker sum keeps the tensor power's condition number (which grows
// like cond(X)^m) out of the logarithm.
HermitianMatrix log_tensor_power(const HermitianMatrix& log_x, int m, Index cap) {
    HermitianMatrix sum = log_x;
    for (int k = 1; k < m; ++k) {
        sum = add(kron(sum, identity(log_x.dim()), cap), kron(identity(sum.dim()), log_x, cap));
    }
    return sum;
}

// Logarithm of a matrix that is positive definite by construction. Only
// exact positivity is required: the operands' relative PD margin was already
// checked, and a pinched tensor power legitimately has a tiny eigenvalue
// floor relative to its spectral radius.
HermitianMatrix log_of_derived_pd(const HermitianMatrix& x, const NumericPolicy& policy) {
    const SpectralDecomposition d = decompose(x, policy);
    if (!(d.min_eigenvalue() > 0.0)) {
        std::ostringstream os;
        os << "derived operand has smallest eigenvalue " << d.min_eigenvalue();
        throw Error(ErrorKind::NotPositiveDefinite, os.str());
    }
    return apply_spectral_function([](double v) { return std::log(v); }, d);
}

}  // namespace

GTReport gt_check(const HermitianMatrix& a, const HermitianMatrix& b, const NumericPolicy& policy) {
    require_same_dim(a, b);
    const double lhs = trace(herm_exp(add(a, b), policy));
    const double rhs = trace(matmul(herm_exp(a, policy), herm_exp(b, policy))).real();
    const double gap = rhs - lhs;
    const double commutator = commutator_norm(a, b);
    return {
        lhs,
        rhs,
        gap,
        gap >= -kGapTol * (std::abs(lhs) + std::abs(rhs)),
        commutator <= kCommuteTol * pair_scale(a, b),
        commutator,
    };
}

ChainTrace chain_trace(const HermitianMatrix& a, const HermitianMatrix& b, int m, const NumericPolicy& policy,
                       const ChainOptions& options) {
    policy.validate();
    require_power(m);
    require_same_dim(a, b);

    const SpectralDecomposition db = decompose(b, policy);
    const HermitianMatrix log_a = herm_log(a, policy);
    const HermitianMatrix log_b = herm_log(db, policy);

    ChainTrace t{};
    t.m = m;
    t.scale = pair_scale(a, b);
    t.s0 = log_trace_exp(add(log_a, log_b));

    const Complex tr_ab = trace(matmul(a, b));
    if (!(tr_ab.real() > 0.0)) {
        throw Error(ErrorKind::DomainError, "tr(AB) is not positive for positive definite operands");
    }
    t.target = std::log(tr_ab.real());
    t.target_imag = tr_ab.imag();

    t.spectrum = count_distinct_spectrum(db, m, policy);
    t.bound = t.target + log_spectrum(t.spectrum) / m;
    t.gap_bound = t.spectrum.log_bound / m;

    const auto full_dim = checked_power(a.dim(), m, options.cap);
    if (!full_dim && options.force_full_tier) {
        std::ostringstream os;
        os << a.dim() << "^" << m << " exceeds full-tier cap " << options.cap;
        throw Error(ErrorKind::SizeOverflow, os.str());
    }
    t.full_matrix_tier = full_dim.has_value();
    if (t.full_matrix_tier) {
        const HermitianMatrix am = tensor_power(a, m, options.cap);
        const HermitianMatrix log_am = log_tensor_power(log_a, m, options.cap);
        const HermitianMatrix log_bm = log_tensor_power(log_b, m, options.cap);
        // log B^{(x)m} has the same eigenprojectors as B^{(x)m} and a spectrum
        // that clusters cleanly.
        const PinchOperator pinch_b(decompose(log_bm, policy));

        t.s0_tensorized = log_trace_exp(add(log_am, log_bm)) / m;
        const HermitianMatrix pinched = pinch(pinch_b, am);
        t.t_pinched = log_trace_exp(add(log_of_derived_pd(pinched, policy), log_bm)) / m;
    }
    return t;
}

std::vector<CheckRecord> chain_checks(const ChainTrace& t) {
    std::vector<CheckRecord> out;
    const std::string suffix = " m=" + std::to_string(t.m);
    auto add_record = [&](const std::string& name, double measured, double tol) {
        out.push_back({name + suffix, measured <= tol, measured, tol});
    };
    add_record("target_imaginary_residue", std::abs(t.target_imag), kImagTol * t.scale);
    if (t.s0_tensorized) {
        add_record("tensorization", std::abs(*t.s0_tensorized - t.s0),
                   kTensorizationTol * std::max(1.0, std::abs(t.s0)));
    }
    add_record("pinching_bound", t.s0 - t.bound, kBoundTol * std::max(1.0, std::abs(t.bound)));
    if (t.t_pinched) {
        add_record("pinched_collapse", std::abs(*t.t_pinched - t.target),
                   kCollapseTol * std::max(1.0, std::abs(t.target)));
    }
    add_record("spectrum_envelope", (t.bound - t.target) - t.gap_bound, 1e-12 * std::max(1.0, t.gap_bound));
    return out;
}

std::vector<ChainTrace> convergence_study(const HermitianMatrix& a, const HermitianMatrix& b,
                                          const std::vector<int>& m_list, const NumericPolicy& policy,
                                          const ChainOptions& options) {
    if (m_list.empty()) throw Error(ErrorKind::InvalidArgument, "power list is empty");
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        require_power(m_list[i]);
        if (i > 0 && m_list[i] <= m_list[i - 1]) {
            throw Error(ErrorKind::InvalidArgument, "power list must be strictly ascending");
        }
    }
    std::vector<std::future<ChainTrace>> pending;
    pending.reserve(m_list.size());
    for (int m : m_list) {
        pending.push_back(std::async(std::launch::async, [&a, &b, m, &policy, &options] {
            return chain_trace(a, b, m, policy, options);
        }));
    }
    std::vector<ChainTrace> traces;
    traces.reserve(m_list.size());
    for (auto& f : pending) traces.push_back(f.get());
    return traces;
}

std::vector<CheckRecord> convergence_checks(const std::vector<ChainTrace>& traces) {
    std::vector<CheckRecord> out;
    for (std::size_t i = 1; i < traces.size(); ++i) {
        const double rise = traces[i].bound - traces[i - 1].bound;
        const double tol = 1e-12 * std::max(1.0, std::abs(traces[i - 1].bound));
        out.push_back({"bound_nonincreasing m=" + std::to_string(traces[i - 1].m) + "->" +
                           std::to_string(traces[i].m),
                       rise <= tol, rise, tol});
    }
    return out;
}

FiniteCertificate gt_from_chain(const HermitianMatrix& a, const HermitianMatrix& b, int m,
                                const NumericPolicy& policy) {
    require_power(m);
    require_same_dim(a, b);
    const SpectralDecomposition db = decompose(b, policy);
    const HermitianMatrix log_a = herm_log(a, policy);
    const HermitianMatrix log_b = herm_log(db, policy);
    std::vector<double> logs = distinct_values(db);
    for (double& v : logs) v = std::log(v);
    return finite_certificate(log_a, log_b, a, b, logs, m, policy);
}

FiniteCertificate gt_via_chain(const HermitianMatrix& a, const HermitianMatrix& b, int m,
                               const NumericPolicy& policy) {
    require_power(m);
    require_same_dim(a, b);
    const SpectralDecomposition db = decompose(b, policy);
    return finite_certificate(a, b, herm_exp(a, policy), herm_exp(db), distinct_values(db), m, policy);
}

}  // namespace gtpinch
