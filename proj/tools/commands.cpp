#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtpinch/error.hpp"
#include "gtpinch/functions.hpp"
#include "gtpinch/golden_thompson.hpp"
#include "gtpinch/pinching.hpp"
#include "gtpinch/random.hpp"
#include "matrix_io.hpp"

namespace gtpinch::cli {

namespace {

using nlohmann::json;

constexpr double kGapTol = 1e-9;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_policy_flags(CLI::App& cmd, NumericPolicy& policy) {
    cmd.add_option("--tol-herm", policy.herm_tol, "Hermiticity tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--tol-cluster", policy.cluster_tol, "Eigenvalue clustering tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--tol-psd", policy.psd_tol, "PSD slack")->check(CLI::PositiveNumber);
    cmd.add_option("--tol-residual", policy.residual_tol, "Eigendecomposition residual bound")
        ->check(CLI::PositiveNumber);
}

json policy_json(const NumericPolicy& p) {
    return {{"herm_tol", p.herm_tol},
            {"cluster_tol", p.cluster_tol},
            {"psd_tol", p.psd_tol},
            {"residual_tol", p.residual_tol}};
}

std::string policy_line(const NumericPolicy& p) {
    std::ostringstream os;
    os << "# policy herm_tol=" << p.herm_tol << " cluster_tol=" << p.cluster_tol << " psd_tol=" << p.psd_tol
       << " residual_tol=" << p.residual_tol;
    return os.str();
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

HermitianMatrix load(const std::string& path, const NumericPolicy& policy) {
    try {
        return to_hermitian(read_matrix_file(path), policy);
    } catch (const FormatError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

json record_json(const CheckRecord& r) {
    return {{"name", r.name}, {"pass", r.pass}, {"measured", r.measured}, {"tolerance", r.tolerance}};
}

CheckRecord from_lemma(const std::string& name, const LemmaCheck& c) {
    return {name, c.holds, c.residual, c.tolerance};
}

void append_lemma_records(std::vector<CheckRecord>& records, const std::string& tag, const HermitianMatrix& reference,
                          const HermitianMatrix& x, const NumericPolicy& policy) {
    const PinchOperator op(reference, policy);
    records.push_back(from_lemma("lemma1_commutes " + tag, verify_lemma1(op, x)));
    records.push_back(from_lemma("lemma2_trace_pairing " + tag, verify_lemma2(op, x)));
    records.push_back(from_lemma("lemma3_pinching_inequality " + tag, verify_lemma3(op, x, policy)));
    records.push_back(from_lemma("dephasing_mixture " + tag, verify_mixture(op, x)));
    const double tr_x = trace(x);
    const double drift = std::abs(trace(pinch(op, x)) - tr_x);
    const double tol = 1e-10 * (1.0 + std::abs(tr_x));
    records.push_back({"pinch_trace_preserved " + tag, drift <= tol, drift, tol});
}

int cmd_check(const std::string& path_a, const std::string& path_b, const NumericPolicy& policy, std::ostream& out) {
    const HermitianMatrix a = load(path_a, policy);
    const HermitianMatrix b = load(path_b, policy);
    if (a.dim() != b.dim()) {
        throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }

    std::vector<CheckRecord> records;
    const GTReport gt = gt_check(a, b, policy);
    const double gt_tol = kGapTol * (std::abs(gt.lhs) + std::abs(gt.rhs));
    records.push_back({"golden_thompson", gt.holds, -gt.gap, gt_tol});
    if (gt.commuting) records.push_back({"commuting_equality", std::abs(gt.gap) <= gt_tol, std::abs(gt.gap), gt_tol});

    append_lemma_records(records, "[ref=A,X=exp(B)]", a, herm_exp(b, policy), policy);
    append_lemma_records(records, "[ref=B,X=exp(A)]", b, herm_exp(a, policy), policy);

    for (int m : {1, 2}) {
        const FiniteCertificate c = gt_via_chain(a, b, m, policy);
        const double tol = kGapTol * (std::abs(c.lhs) + std::abs(c.rhs));
        records.push_back({"finite_chain_certificate m=" + std::to_string(m), c.holds, c.lhs - c.rhs, tol});
    }

    const bool pass = std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
    json doc;
    doc["command"] = "check";
    doc["inputs"] = {
        {"A", {{"path", path_a}, {"dim", a.dim()}, {"digest", matrix_digest(a)}}},
        {"B", {{"path", path_b}, {"dim", b.dim()}, {"digest", matrix_digest(b)}}},
        {"policy", policy_json(policy)},
    };
    doc["golden_thompson"] = {{"lhs", gt.lhs},
                              {"rhs", gt.rhs},
                              {"gap", gt.gap},
                              {"commuting", gt.commuting},
                              {"commutator", gt.commutator}};
    doc["records"] = json::array();
    for (const auto& r : records) doc["records"].push_back(record_json(r));
    doc["verdict"] = pass ? "pass" : "fail";
    out << doc.dump(2) << "\n";
    return pass ? kExitPass : kExitViolation;
}

int cmd_chain(const std::string& path_a, const std::string& path_b, const std::string& powers, Index cap,
              const NumericPolicy& policy, std::ostream& out, std::ostream& err) {
    const std::vector<int> m_list = parse_powers(powers);
    const HermitianMatrix a = load(path_a, policy);
    const HermitianMatrix b = load(path_b, policy);
    if (a.dim() != b.dim()) {
        throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }

    std::vector<ChainTrace> traces;
    try {
        traces = convergence_study(a, b, m_list, policy, ChainOptions{cap, false});
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotPositiveDefinite) throw InputError(e.what());
        throw;
    }

    err << policy_line(policy) << " cap=" << cap << "\n";
    out << "m,s0,s0_tensorized,t_pinched,target,bound,gap_bound\n";
    std::vector<CheckRecord> records;
    for (const auto& t : traces) {
        out << t.m << ',' << fmt12(t.s0) << ',' << (t.s0_tensorized ? fmt12(*t.s0_tensorized) : "") << ','
            << (t.t_pinched ? fmt12(*t.t_pinched) : "") << ',' << fmt12(t.target) << ',' << fmt12(t.bound) << ','
            << fmt12(t.gap_bound) << '\n';
        const auto checks = chain_checks(t);
        records.insert(records.end(), checks.begin(), checks.end());
    }
    const auto study = convergence_checks(traces);
    records.insert(records.end(), study.begin(), study.end());

    bool pass = true;
    for (const auto& r : records) {
        if (!r.pass) {
            pass = false;
            err << "violation: " << r.name << " measured=" << r.measured << " tolerance=" << r.tolerance << "\n";
        }
    }
    return pass ? kExitPass : kExitViolation;
}

struct TrialOutcome {
    bool gt = true;
    bool lemma1 = true;
    bool lemma2 = true;
    bool lemma3 = true;
    bool mixture = true;
    bool error = false;
    double relative_gap = 0.0;

    bool ok() const { return gt && lemma1 && lemma2 && lemma3 && mixture && !error; }
};

TrialOutcome run_trial(int dim, std::uint64_t trial_seed, const NumericPolicy& policy) {
    TrialOutcome o;
    try {
        CounterRng seeds(trial_seed, static_cast<std::uint64_t>(dim));
        const HermitianMatrix a = random_hermitian(dim, seeds.next_u64());
        const HermitianMatrix b = random_hermitian(dim, seeds.next_u64());
        const GTReport gt = gt_check(a, b, policy);
        o.gt = gt.holds;
        o.relative_gap = gt.gap / (std::abs(gt.lhs) + std::abs(gt.rhs));

        const HermitianMatrix reference = random_pd(dim, seeds.next_u64(), 0.1);
        const Index rank = 1 + static_cast<Index>(seeds.next_u64() % static_cast<std::uint64_t>(dim));
        const HermitianMatrix x = random_psd(dim, rank, seeds.next_u64());
        const PinchOperator op(reference, policy);
        o.lemma1 = verify_lemma1(op, x).holds;
        o.lemma2 = verify_lemma2(op, x).holds;
        o.lemma3 = verify_lemma3(op, x, policy).holds;
        o.mixture = verify_mixture(op, x).holds;
    } catch (const Error&) {
        o.error = true;
    }
    return o;
}

// Trials are independent; results land in their trial slot so the report
// does not depend on scheduling.
std::vector<TrialOutcome> run_trials(int dim, int trials, std::uint64_t seed, const NumericPolicy& policy) {
    std::vector<TrialOutcome> results(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < trials; t = next++) {
            results[static_cast<std::size_t>(t)] = run_trial(dim, seed + static_cast<std::uint64_t>(t), policy);
        }
    };
    const unsigned n_threads = std::clamp(std::thread::hardware_concurrency(), 1U, 16U);
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    return results;
}

int cmd_suite(const std::string& dims_text, int trials, std::uint64_t seed, const NumericPolicy& policy,
              std::ostream& out) {
    const std::vector<int> dims = parse_dims(dims_text);
    out << "# gtpinch suite dims=" << dims_text << " trials=" << trials << " seed=" << seed << "\n";
    out << policy_line(policy) << "\n";

    long total = 0;
    long violations = 0;
    for (int dim : dims) {
        const auto results = run_trials(dim, trials, seed, policy);
        long gt = 0, l1 = 0, l2 = 0, l3 = 0, mix = 0, errors = 0;
        double min_gap = INFINITY;
        for (const auto& r : results) {
            gt += !r.gt;
            l1 += !r.lemma1;
            l2 += !r.lemma2;
            l3 += !r.lemma3;
            mix += !r.mixture;
            errors += r.error;
            violations += !r.ok();
            if (!r.error) min_gap = std::min(min_gap, r.relative_gap);
        }
        total += trials;
        out << "dim=" << dim << " trials=" << trials << " gt_violations=" << gt << " lemma1_violations=" << l1
            << " lemma2_violations=" << l2 << " lemma3_violations=" << l3 << " mixture_violations=" << mix
            << " errors=" << errors << " min_relative_gap=" << fmt12(min_gap) << "\n";
    }
    out << "summary trials=" << total << " violations=" << violations << "\n";
    return violations == 0 ? kExitPass : kExitViolation;
}

int cmd_gen(int dim, std::uint64_t seed, const std::string& kind, double floor, std::ostream& out) {
    HermitianMatrix m = kind == "pd"          ? random_pd(dim, seed, floor)
                        : kind == "hermitian" ? random_hermitian(dim, seed)
                                              : random_psd(dim, dim, seed);
    out << serialize_matrix_file(to_matrix_file(m));
    return kExitPass;
}

int parse_int(const std::string& token, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw InputError("invalid " + what + " '" + token + "'");
    }
}

}  // namespace

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots), "dimension");
        const int hi = parse_int(text.substr(dots + 2), "dimension");
        if (lo > hi) throw InputError("empty dimension range '" + text + "'");
        for (int d = lo; d <= hi; ++d) dims.push_back(d);
    } else {
        std::stringstream ss(text);
        for (std::string token; std::getline(ss, token, ',');) dims.push_back(parse_int(token, "dimension"));
    }
    if (dims.empty()) throw InputError("no dimensions given");
    for (int d : dims) {
        if (d < 1) throw InputError("dimensions must be positive");
    }
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return dims;
}

std::vector<int> parse_powers(const std::string& text) {
    std::vector<int> powers;
    std::stringstream ss(text);
    for (std::string token; std::getline(ss, token, ',');) {
        const int m = parse_int(token, "power");
        if (m < 1) throw InputError("powers must be positive");
        if (!powers.empty() && m <= powers.back()) throw InputError("powers must be strictly ascending");
        powers.push_back(m);
    }
    if (powers.empty()) throw InputError("no powers given");
    return powers;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral pinching and Golden-Thompson verification", "gtpinch"};
    app.require_subcommand(1);

    NumericPolicy policy;
    std::string path_a;
    std::string path_b;

    auto* check = app.add_subcommand("check", "Golden-Thompson and pinching lemma certificate for a matrix pair");
    check->add_option("A", path_a, "Matrix file for A")->required();
    check->add_option("B", path_b, "Matrix file for B")->required();
    add_policy_flags(*check, policy);

    std::string powers = "1,2,3,4";
    Index cap = kDefaultDimensionCap;
    auto* chain = app.add_subcommand("chain", "CSV trace of the pinching proof chain for positive definite A, B");
    chain->add_option("A", path_a, "Matrix file for A")->required();
    chain->add_option("B", path_b, "Matrix file for B")->required();
    chain->add_option("--m", powers, "Comma-separated ascending tensor powers")->capture_default_str();
    chain->add_option("--cap", cap, "Largest materialized dimension d^m")->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_policy_flags(*chain, policy);

    std::string dims = "2..6";
    int trials = 100;
    std::uint64_t seed = 1;
    auto* suite = app.add_subcommand("suite", "Seeded random Golden-Thompson and lemma suite");
    suite->add_option("--dims", dims, "Dimension, range lo..hi, or comma list")->capture_default_str();
    suite->add_option("--trials", trials, "Trials per dimension")->check(CLI::PositiveNumber)->capture_default_str();
    suite->add_option("--seed", seed, "Base seed; trial t uses seed + t")->capture_default_str();
    add_policy_flags(*suite, policy);

    int gen_dim = 2;
    std::string kind = "pd";
    double floor = 1.0;
    auto* gen = app.add_subcommand("gen", "Write a seeded random matrix file to standard output");
    gen->add_option("--dim", gen_dim, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--seed", seed, "Seed")->capture_default_str();
    gen->add_option("--kind", kind, "pd, psd or hermitian")
        ->check(CLI::IsMember({"pd", "psd", "hermitian"}))
        ->capture_default_str();
    gen->add_option("--floor", floor, "Smallest eigenvalue for pd")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInputError;
    }

    try {
        policy.validate();
        if (check->parsed()) return cmd_check(path_a, path_b, policy, out);
        if (chain->parsed()) return cmd_chain(path_a, path_b, powers, cap, policy, out, err);
        if (suite->parsed()) return cmd_suite(dims, trials, seed, policy, out);
        if (gen->parsed()) return cmd_gen(gen_dim, seed, kind, floor, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace gtpinch::cli
