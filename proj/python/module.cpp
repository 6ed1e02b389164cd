#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gtpinch/error.hpp"
#include "gtpinch/functions.hpp"
#include "gtpinch/golden_thompson.hpp"
#include "gtpinch/pinching.hpp"
#include "gtpinch/random.hpp"
#include "gtpinch/tensor.hpp"

namespace py = pybind11;
using namespace gtpinch;

namespace {

// Python callers pass plain complex (or real) arrays; every entry point runs
// them through the same Hermitian input gate as the C++ API.
HermitianMatrix gate(const ComplexMatrix& m, const NumericPolicy& policy) { return construct_hermitian(m, policy); }

const NumericPolicy kDefault{};

}  // namespace

PYBIND11_MODULE(gtpinch, m) {
    m.doc() = "Spectral pinching and Golden-Thompson verification for Hermitian matrices.";

    // Held as a bare handle so no Python object is destroyed at process exit.
    static const py::handle error_type = py::exception<Error>(m, "Error", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object instance = error_type(e.what());
            instance.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), instance.ptr());
        }
    });

    py::class_<NumericPolicy>(m, "NumericPolicy")
        .def(py::init([](double herm_tol, double cluster_tol, double psd_tol, double residual_tol) {
                 NumericPolicy p{herm_tol, cluster_tol, psd_tol, residual_tol};
                 p.validate();
                 return p;
             }),
             py::arg("herm_tol") = kDefault.herm_tol, py::arg("cluster_tol") = kDefault.cluster_tol,
             py::arg("psd_tol") = kDefault.psd_tol, py::arg("residual_tol") = kDefault.residual_tol)
        .def_readonly("herm_tol", &NumericPolicy::herm_tol)
        .def_readonly("cluster_tol", &NumericPolicy::cluster_tol)
        .def_readonly("psd_tol", &NumericPolicy::psd_tol)
        .def_readonly("residual_tol", &NumericPolicy::residual_tol);

    py::class_<GTReport>(m, "GTReport")
        .def_readonly("lhs", &GTReport::lhs)
        .def_readonly("rhs", &GTReport::rhs)
        .def_readonly("gap", &GTReport::gap)
        .def_readonly("holds", &GTReport::holds)
        .def_readonly("commuting", &GTReport::commuting)
        .def_readonly("commutator", &GTReport::commutator);

    py::class_<SpectrumCount>(m, "SpectrumCount")
        .def_readonly("m", &SpectrumCount::m)
        .def_readonly("distinct_count", &SpectrumCount::distinct_count)
        .def_readonly("exact", &SpectrumCount::exact)
        .def_readonly("log_bound", &SpectrumCount::log_bound)
        .def_readonly("d_distinct", &SpectrumCount::d_distinct)
        .def_readonly("base_dim", &SpectrumCount::base_dim)
        .def_readonly("log_bound_dim", &SpectrumCount::log_bound_dim);

    py::class_<ChainTrace>(m, "ChainTrace")
        .def_readonly("m", &ChainTrace::m)
        .def_readonly("s0", &ChainTrace::s0)
        .def_readonly("s0_tensorized", &ChainTrace::s0_tensorized)
        .def_readonly("t_pinched", &ChainTrace::t_pinched)
        .def_readonly("target", &ChainTrace::target)
        .def_readonly("bound", &ChainTrace::bound)
        .def_readonly("gap_bound", &ChainTrace::gap_bound)
        .def_readonly("spectrum", &ChainTrace::spectrum)
        .def_readonly("full_matrix_tier", &ChainTrace::full_matrix_tier);

    py::class_<FiniteCertificate>(m, "FiniteCertificate")
        .def_readonly("m", &FiniteCertificate::m)
        .def_readonly("lhs", &FiniteCertificate::lhs)
        .def_readonly("rhs", &FiniteCertificate::rhs)
        .def_readonly("spectrum_factor", &FiniteCertificate::spectrum_factor)
        .def_readonly("holds", &FiniteCertificate::holds);

    py::class_<LemmaCheck>(m, "LemmaCheck")
        .def_readonly("holds", &LemmaCheck::holds)
        .def_readonly("residual", &LemmaCheck::residual)
        .def_readonly("tolerance", &LemmaCheck::tolerance);

    const auto policy_arg = py::arg("policy") = kDefault;

    m.def(
        "hermitian",
        [](const ComplexMatrix& a, const NumericPolicy& p) { return gate(a, p).matrix(); },
        py::arg("a"), policy_arg, "Validate and symmetrize a Hermitian matrix.");
    m.def(
        "eigh",
        [](const ComplexMatrix& a, const NumericPolicy& p) {
            EigenSystem es = eigh(gate(a, p), p);
            return py::make_tuple(es.values, es.vectors);
        },
        py::arg("a"), policy_arg, "Ascending eigenvalues and orthonormal eigenvectors.");
    m.def(
        "eigvalsh", [](const ComplexMatrix& a, const NumericPolicy& p) { return eigvalsh(gate(a, p)); },
        py::arg("a"), policy_arg);
    m.def(
        "spectral_decomposition",
        [](const ComplexMatrix& a, const NumericPolicy& p) {
            const SpectralDecomposition d = decompose(gate(a, p), p);
            py::list out;
            for (const auto& pair : d.pairs()) {
                out.append(py::make_tuple(pair.lambda, pair.multiplicity, pair.projector().matrix()));
            }
            return out;
        },
        py::arg("a"), policy_arg, "List of (eigenvalue, multiplicity, projector) over distinct eigenvalues.");
    m.def(
        "distinct_eigenvalue_count",
        [](const ComplexMatrix& a, const NumericPolicy& p) { return distinct_eigenvalue_count(gate(a, p), p); },
        py::arg("a"), policy_arg);
    m.def(
        "expm", [](const ComplexMatrix& a, const NumericPolicy& p) { return herm_exp(gate(a, p), p).matrix(); },
        py::arg("a"), policy_arg);
    m.def(
        "logm", [](const ComplexMatrix& a, const NumericPolicy& p) { return herm_log(gate(a, p), p).matrix(); },
        py::arg("a"), policy_arg);

    m.def(
        "pinch",
        [](const ComplexMatrix& ref, const ComplexMatrix& x, const NumericPolicy& p) {
            return pinch(PinchOperator(gate(ref, p), p), gate(x, p)).matrix();
        },
        py::arg("reference"), py::arg("x"), policy_arg, "Spectral pinching of x by the reference's eigenprojectors.");
    m.def(
        "pinch_via_mixture",
        [](const ComplexMatrix& ref, const ComplexMatrix& x, const NumericPolicy& p) {
            return pinch_via_mixture(PinchOperator(gate(ref, p), p), gate(x, p)).matrix();
        },
        py::arg("reference"), py::arg("x"), policy_arg);
    m.def(
        "verify_pinching",
        [](const ComplexMatrix& ref, const ComplexMatrix& x, const NumericPolicy& p) {
            const PinchOperator op(gate(ref, p), p);
            const HermitianMatrix hx = gate(x, p);
            py::dict out;
            out["commutes"] = verify_lemma1(op, hx);
            out["trace_preserved"] = verify_lemma2(op, hx);
            out["loewner_lower_bound"] = verify_lemma3(op, hx, p);
            out["mixture"] = verify_mixture(op, hx);
            return out;
        },
        py::arg("reference"), py::arg("x"), policy_arg,
        "Pinching identity checks; x must be positive semidefinite.");

    m.def(
        "kron",
        [](const ComplexMatrix& a, const ComplexMatrix& b, Index cap) { return kron(a, b, cap); }, py::arg("a"),
        py::arg("b"), py::arg("cap") = kDefaultDimensionCap);
    m.def(
        "tensor_power",
        [](const ComplexMatrix& a, int power, Index cap, const NumericPolicy& p) {
            return tensor_power(gate(a, p), power, cap).matrix();
        },
        py::arg("a"), py::arg("m"), py::arg("cap") = kDefaultDimensionCap, policy_arg);
    m.def(
        "binomial_bound",
        [](int power, Index n) {
            const BinomialBound b = binomial_bound(power, n);
            return py::make_tuple(b.exact, b.log_value);
        },
        py::arg("m"), py::arg("n"), "(C(m+n-1, n-1) or None if it overflows 64 bits, its logarithm).");
    m.def(
        "count_distinct_spectrum",
        [](const ComplexMatrix& a, int power, const NumericPolicy& p) {
            return count_distinct_spectrum(decompose(gate(a, p), p), power, p);
        },
        py::arg("a"), py::arg("m"), policy_arg, "Distinct eigenvalues of the m-th tensor power of a PD matrix.");

    m.def(
        "gt_check",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const NumericPolicy& p) {
            return gt_check(gate(a, p), gate(b, p), p);
        },
        py::arg("a"), py::arg("b"), policy_arg);
    m.def(
        "chain_trace",
        [](const ComplexMatrix& a, const ComplexMatrix& b, int power, Index cap, const NumericPolicy& p) {
            return chain_trace(gate(a, p), gate(b, p), power, p, ChainOptions{cap, false});
        },
        py::arg("a"), py::arg("b"), py::arg("m"), py::arg("cap") = kDefaultDimensionCap, policy_arg);
    m.def(
        "convergence_study",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const std::vector<int>& powers, Index cap,
           const NumericPolicy& p) {
            const HermitianMatrix ha = gate(a, p), hb = gate(b, p);
            py::gil_scoped_release release;
            return convergence_study(ha, hb, powers, p, ChainOptions{cap, false});
        },
        py::arg("a"), py::arg("b"), py::arg("powers"), py::arg("cap") = kDefaultDimensionCap, policy_arg);
    m.def(
        "gt_from_chain",
        [](const ComplexMatrix& a, const ComplexMatrix& b, int power, const NumericPolicy& p) {
            return gt_from_chain(gate(a, p), gate(b, p), power, p);
        },
        py::arg("a"), py::arg("b"), py::arg("m"), policy_arg);
    m.def(
        "gt_via_chain",
        [](const ComplexMatrix& a, const ComplexMatrix& b, int power, const NumericPolicy& p) {
            return gt_via_chain(gate(a, p), gate(b, p), power, p);
        },
        py::arg("a"), py::arg("b"), py::arg("m"), policy_arg);

    m.def(
        "random_pd", [](Index dim, std::uint64_t seed, double floor) { return random_pd(dim, seed, floor).matrix(); },
        py::arg("dim"), py::arg("seed"), py::arg("floor") = 0.1);
    m.def(
        "random_hermitian",
        [](Index dim, std::uint64_t seed, double scale) { return random_hermitian(dim, seed, scale).matrix(); },
        py::arg("dim"), py::arg("seed"), py::arg("scale") = 1.0);
    m.def(
        "random_psd",
        [](Index dim, Index rank, std::uint64_t seed) { return random_psd(dim, rank, seed).matrix(); },
        py::arg("dim"), py::arg("rank"), py::arg("seed"));
}
