#include "gtpinch/random.hpp"

#include <cmath>
#include <numbers>

#include "gtpinch/error.hpp"

namespace gtpinch {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexMatrix gaussian(Index rows, Index cols, CounterRng& rng) {
    ComplexMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    }
    return g;
}

void require_positive_dim(Index dim) {
    if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(seed + kGamma) ^ mix64(stream * kGamma + 0x632be59bd9b4e019ULL)) {}

std::uint64_t CounterRng::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex CounterRng::complex_normal() noexcept {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

HermitianMatrix random_pd(Index dim, std::uint64_t seed, double floor) {
    require_positive_dim(dim);
    if (!(floor > 0.0)) throw Error(ErrorKind::InvalidArgument, "floor must be positive");
    CounterRng rng(seed);
    const ComplexMatrix g = gaussian(dim, dim, rng) / std::sqrt(static_cast<double>(dim));
    ComplexMatrix m = g * g.adjoint();
    m.diagonal().array() += floor;
    return HermitianMatrix::symmetrize(m);
}

HermitianMatrix random_hermitian(Index dim, std::uint64_t seed, double scale) {
    require_positive_dim(dim);
    CounterRng rng(seed, 1);
    const ComplexMatrix g = gaussian(dim, dim, rng);
    return HermitianMatrix::symmetrize(scale * (g + g.adjoint()) * std::numbers::sqrt2 * 0.5);
}

HermitianMatrix random_psd(Index dim, Index rank, std::uint64_t seed) {
    require_positive_dim(dim);
    if (rank < 0) throw Error(ErrorKind::InvalidArgument, "rank must be non-negative");
    CounterRng rng(seed, 2);
    const ComplexMatrix g = gaussian(dim, rank, rng) / std::sqrt(static_cast<double>(dim));
    return HermitianMatrix::symmetrize(g * g.adjoint());
}

ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
    require_positive_dim(dim);
    CounterRng rng(seed, 3);
    const ComplexMatrix z = gaussian(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix& r = qr.matrixQR();
    // Fix the phase of each column so the distribution is Haar.
    for (Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

HermitianMatrix with_spectrum(const std::vector<double>& eigenvalues, std::uint64_t seed) {
    const auto d = static_cast<Index>(eigenvalues.size());
    const ComplexMatrix u = random_unitary(d, seed);
    RealVector w(d);
    for (Index i = 0; i < d; ++i) w(i) = eigenvalues[static_cast<std::size_t>(i)];
    return HermitianMatrix::symmetrize(u * w.cast<Complex>().asDiagonal() * u.adjoint());
}

}  // namespace gtpinch
