#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "gtpinch/random.hpp"
#include "json.hpp"
#include "matrix_io.hpp"

using namespace gtpinch;
using namespace gtpinch::cli;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("gtpinch_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& name, const std::string& content) const {
        const auto p = path / name;
        std::ofstream(p) << content;
        return p.string();
    }
};

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matrix file parsing") {
    const MatrixFile f = parse_matrix_file(R"({"dim": 2, "re": [[1, 0], [0, -1]]})");
    CHECK(f.dim == 2);
    CHECK(f.re[1][1] == -1.0);
    CHECK(f.im[0][1] == 0.0);

    const MatrixFile g = parse_matrix_file(R"({"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 2], [-2, 0]]})");
    const HermitianMatrix h = to_hermitian(g, {});
    CHECK(h(0, 1) == Complex(0, 2));
}

TEST_CASE("matrix file diagnostics name the offending field") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {R"({"re": [[1]]})", "dim"},
        {R"({"dim": 0, "re": [[1]]})", "dim"},
        {R"({"dim": 1.5, "re": [[1]]})", "dim"},
        {R"({"dim": 2})", "re"},
        {R"({"dim": 2, "re": [[1, 0]]})", "re"},
        {R"({"dim": 2, "re": [[1, 0], [0]]})", "re[1]"},
        {R"({"dim": 2, "re": [[1, 0], [0, "x"]]})", "re[1][1]"},
        {R"({"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], 3]})", "im[1]"},
        {R"({"dim": 2, "re": )", "document"},
        {R"([1, 2])", "document"},
    };
    for (const auto& [text, field] : cases) {
        try {
            parse_matrix_file(text);
            FAIL("expected FormatError for " << text);
        } catch (const FormatError& e) {
            CHECK(e.field() == field);
        }
    }
}

TEST_CASE("matrix file round trip preserves values") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto d = static_cast<Index>(1 + seed % 6);
        const HermitianMatrix m = seed % 2 ? random_hermitian(d, seed) : random_pd(d, seed, 0.5);
        const std::string text = serialize_matrix_file(to_matrix_file(m));
        const HermitianMatrix back = to_hermitian(parse_matrix_file(text), {});
        CHECK(back == m);
        CHECK(serialize_matrix_file(parse_matrix_file(text)) == text);
        CHECK(matrix_digest(back) == matrix_digest(m));
    }
}

TEST_CASE("check command exit codes") {
    TempDir dir;
    const auto a = dir.write("a.json", R"({"dim": 2, "re": [[1, 0], [0, -1]]})");
    const auto id = dir.write("i.json", R"({"dim": 2, "re": [[1, 0], [0, 1]]})");
    const auto zero = dir.write("z.json", R"({"dim": 2, "re": [[0, 0], [0, 0]]})");
    const auto bad = dir.write("bad.json", R"({"dim": 2, "re": [[1, 1], [0, 2]]})");
    const auto ragged = dir.write("ragged.json", R"({"dim": 2, "re": [[1, 1], [0]]})");

    RunResult r = run_cli({"check", a, id});
    CHECK(r.code == kExitPass);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["verdict"] == "pass");
    CHECK(std::abs(doc["golden_thompson"]["gap"].get<double>()) < 1e-12);
    CHECK(doc["golden_thompson"]["commuting"] == true);
    CHECK(doc["inputs"]["policy"]["psd_tol"] == 1e-9);
    CHECK(doc["inputs"]["A"]["digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    for (const auto& rec : doc["records"]) CHECK(rec["pass"] == true);

    CHECK(run_cli({"check", zero, zero}).code == kExitPass);

    r = run_cli({"check", bad, id});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("NotHermitian") != std::string::npos);

    r = run_cli({"check", ragged, id});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("re[1]") != std::string::npos);

    CHECK(run_cli({"check", (dir.path / "missing.json").string(), id}).code == kExitInputError);
    CHECK(run_cli({"check", a}).code == kExitInputError);
    CHECK(run_cli({}).code == kExitInputError);
    CHECK(run_cli({"check", a, id, "--tol-psd", "-1"}).code == kExitInputError);
}

TEST_CASE("chain command CSV output") {
    TempDir dir;
    const auto id = dir.write("i.json", R"({"dim": 2, "re": [[1, 0], [0, 1]]})");
    RunResult r = run_cli({"chain", id, id, "--m", "1,2,3"});
    CHECK(r.code == kExitPass);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "m,s0,s0_tensorized,t_pinched,target,bound,gap_bound");
    const std::string log2 = "0.69314718056";
    for (int m = 1; m <= 3; ++m) {
        std::getline(lines, line);
        CHECK(line.rfind(std::to_string(m) + "," + log2 + "," + log2 + "," + log2 + "," + log2 + "," + log2 + ",",
                         0) == 0);
    }

    std::ostringstream pd_out;
    run({"gen", "--dim", "2", "--seed", "42"}, pd_out, std::cerr);
    const auto pa = dir.write("pa.json", pd_out.str());
    std::ostringstream pd_out2;
    run({"gen", "--dim", "2", "--seed", "43"}, pd_out2, std::cerr);
    const auto pb = dir.write("pb.json", pd_out2.str());

    r = run_cli({"chain", pa, pb, "--m", "1,2,3,4"});
    CHECK(r.code == kExitPass);
    std::istringstream rows(r.out);
    std::getline(rows, line);
    double previous = INFINITY;
    int count = 0;
    while (std::getline(rows, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        REQUIRE(cols.size() == 7);
        const double bound = std::stod(cols[5]);
        CHECK(bound <= previous);
        previous = bound;
        ++count;
    }
    CHECK(count == 4);

    // 2^5 = 32 > cap 16: tensorized columns empty, bound still present.
    r = run_cli({"chain", pa, pb, "--m", "5", "--cap", "16"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("\n5,") != std::string::npos);
    const std::string row = r.out.substr(r.out.find("\n5,") + 1);
    CHECK(row.find(",,,") != std::string::npos);

    const auto indefinite = dir.write("x.json", R"({"dim": 2, "re": [[1, 0], [0, -1]]})");
    r = run_cli({"chain", indefinite, id});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("NotPositiveDefinite") != std::string::npos);
    CHECK(run_cli({"chain", id, id, "--m", "3,2"}).code == kExitInputError);
    CHECK(run_cli({"chain", id, id, "--m", "0"}).code == kExitInputError);
}

TEST_CASE("suite command is deterministic and validates flags") {
    const RunResult first = run_cli({"suite", "--dims", "2", "--trials", "10", "--seed", "1"});
    const RunResult second = run_cli({"suite", "--dims", "2", "--trials", "10", "--seed", "1"});
    CHECK(first.code == kExitPass);
    CHECK(first.out == second.out);
    CHECK(first.out.find("summary trials=10 violations=0") != std::string::npos);
    CHECK(first.out.find("psd_tol=1e-09") != std::string::npos);

    const RunResult range = run_cli({"suite", "--dims", "2..6", "--trials", "200"});
    CHECK(range.code == kExitPass);
    CHECK(range.out.find("summary trials=1000 violations=0") != std::string::npos);

    CHECK(run_cli({"suite", "--trials", "0"}).code == kExitInputError);
    CHECK(run_cli({"suite", "--dims", "6..2"}).code == kExitInputError);
    CHECK(run_cli({"suite", "--dims", "abc"}).code == kExitInputError);
}

TEST_CASE("dimension and power list parsing") {
    CHECK(parse_dims("3") == std::vector<int>{3});
    CHECK(parse_dims("2..5") == std::vector<int>{2, 3, 4, 5});
    CHECK(parse_dims("5,2,4") == std::vector<int>{2, 4, 5});
    CHECK(parse_powers("1,2,4,8") == std::vector<int>{1, 2, 4, 8});
    CHECK_THROWS(parse_powers("1,1"));
    CHECK_THROWS(parse_dims("0"));
}

TEST_CASE("gen command emits parseable matrices") {
    for (const char* kind : {"pd", "psd", "hermitian"}) {
        const RunResult r = run_cli({"gen", "--dim", "3", "--seed", "5", "--kind", kind});
        CHECK(r.code == kExitPass);
        CHECK_NOTHROW(to_hermitian(parse_matrix_file(r.out), {}));
    }
    CHECK(run_cli({"gen", "--kind", "nope"}).code == kExitInputError);
}
