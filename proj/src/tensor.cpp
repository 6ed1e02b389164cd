#include "gtpinch/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gtpinch/error.hpp"
#include "gtpinch/functions.hpp"

namespace gtpinch {

namespace {

[[noreturn]] void overflow(Index rows, Index cap) {
    std::ostringstream os;
    os << "result dimension " << rows << " exceeds cap " << cap;
    throw Error(ErrorKind::SizeOverflow, os.str());
}

// Appends log-sums of all nondecreasing index sequences of length `remaining`
// drawn from logs[start..].
void enumerate_sums(const std::vector<double>& logs, std::size_t start, int remaining, double partial,
                    std::vector<double>& out) {
    if (remaining == 0) {
        out.push_back(partial);
        return;
    }
    for (std::size_t i = start; i < logs.size(); ++i) {
        enumerate_sums(logs, i, remaining - 1, partial + logs[i], out);
    }
}

}  // namespace

std::optional<Index> checked_power(Index dim, int m, Index cap) {
    Index result = 1;
    for (int i = 0; i < m; ++i) {
        if (dim != 0 && result > cap / dim) return std::nullopt;
        result *= dim;
    }
    if (result > cap) return std::nullopt;
    return result;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Index cap) {
    const Index rows = a.rows() * b.rows();
    const Index cols = a.cols() * b.cols();
    if (std::max(rows, cols) > cap) overflow(std::max(rows, cols), cap);
    ComplexMatrix out(rows, cols);
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b, Index cap) {
    return HermitianMatrix::symmetrize(kron(a.matrix(), b.matrix(), cap));
}

HermitianMatrix tensor_power(const HermitianMatrix& a, int m, Index cap) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "tensor power must be at least 1");
    if (!checked_power(a.dim(), m, cap)) {
        std::ostringstream os;
        os << a.dim() << "^" << m << " exceeds cap " << cap;
        throw Error(ErrorKind::SizeOverflow, os.str());
    }
    ComplexMatrix out = a.matrix();
    for (int i = 1; i < m; ++i) out = kron(out, a.matrix(), cap);
    return HermitianMatrix::symmetrize(out);
}

BinomialBound binomial_bound(int m, Index n_distinct) {
    if (m < 1 || n_distinct < 1) {
        throw Error(ErrorKind::InvalidArgument, "binomial bound needs m >= 1 and n >= 1");
    }
    const auto top = static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n_distinct) - 1;
    const std::uint64_t k = std::min(static_cast<std::uint64_t>(n_distinct) - 1, static_cast<std::uint64_t>(m));

    // After step i, r == C(top - k + i, i). Dividing i out of r first keeps
    // the intermediate product exact: (top - k + i) is divisible by i / gcd(r, i).
    std::optional<std::uint64_t> exact;
    std::uint64_t r = 1;
    bool fits = true;
    for (std::uint64_t i = 1; i <= k && fits; ++i) {
        const std::uint64_t g = std::gcd(r, i);
        fits = !__builtin_mul_overflow(r / g, (top - k + i) / (i / g), &r);
    }
    if (fits) exact = r;

    const double log_value = std::lgamma(static_cast<double>(top) + 1.0) -
                             std::lgamma(static_cast<double>(n_distinct)) -
                             std::lgamma(static_cast<double>(m) + 1.0);
    return {exact, log_value};
}

SpectrumCount count_distinct_spectrum(const SpectralDecomposition& base, int m, const NumericPolicy& policy,
                                      std::uint64_t enumeration_cap) {
    if (!is_positive_definite(base, policy)) {
        std::ostringstream os;
        os << "spectrum counting runs in the log domain; smallest eigenvalue is " << base.min_eigenvalue();
        throw Error(ErrorKind::NotPositiveDefinite, os.str());
    }
    std::vector<double> logs;
    logs.reserve(base.pairs().size());
    for (const auto& p : base.pairs()) logs.push_back(std::log(p.lambda));
    SpectrumCount count = count_distinct_log_spectrum(logs, m, policy, enumeration_cap);
    count.base_dim = base.source_dim();
    count.log_bound_dim = binomial_bound(m, count.base_dim).log_value;
    return count;
}

SpectrumCount count_distinct_log_spectrum(const std::vector<double>& log_eigenvalues, int m,
                                          const NumericPolicy& policy, std::uint64_t enumeration_cap) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "tensor power must be at least 1");
    const auto n = static_cast<Index>(log_eigenvalues.size());
    const BinomialBound bound = binomial_bound(m, n);

    if (!bound.exact || *bound.exact > enumeration_cap) {
        return {m, bound.exact.value_or(std::numeric_limits<std::uint64_t>::max()), false, bound.log_value, n, n,
                bound.log_value};
    }

    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(*bound.exact));
    enumerate_sums(log_eigenvalues, 0, m, 0.0, sums);
    std::sort(sums.begin(), sums.end());

    const RealVector sorted = Eigen::Map<const RealVector>(sums.data(), static_cast<Index>(sums.size()));
    const auto clusters = cluster_ascending(sorted, static_cast<double>(m) * policy.cluster_tol);
    return {m, static_cast<std::uint64_t>(clusters.size()), true, bound.log_value, n, n, bound.log_value};
}

}  // namespace gtpinch
