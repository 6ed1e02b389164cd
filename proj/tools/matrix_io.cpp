#include "matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gtpinch::cli {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> parse_grid(const json& doc, const std::string& key, Index dim) {
    const json& grid = doc.at(key);
    if (!grid.is_array()) throw FormatError(key, "expected an array of rows");
    if (static_cast<Index>(grid.size()) != dim) {
        throw FormatError(key, "expected " + std::to_string(dim) + " rows, got " + std::to_string(grid.size()));
    }
    std::vector<std::vector<double>> out(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string row_name = key + "[" + std::to_string(i) + "]";
        const json& row = grid[i];
        if (!row.is_array()) throw FormatError(row_name, "expected an array of numbers");
        if (static_cast<Index>(row.size()) != dim) {
            throw FormatError(row_name,
                              "expected " + std::to_string(dim) + " entries, got " + std::to_string(row.size()));
        }
        out[i].reserve(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_number()) {
                throw FormatError(row_name + "[" + std::to_string(j) + "]", "expected a number");
            }
            out[i].push_back(row[j].get<double>());
        }
    }
    return out;
}

void feed(std::uint64_t& h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

FormatError::FormatError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

MatrixFile parse_matrix_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("document", e.what());
    }
    if (!doc.is_object()) throw FormatError("document", "expected a JSON object with keys dim, re, im");
    if (!doc.contains("dim")) throw FormatError("dim", "missing");
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
        throw FormatError("dim", "expected a positive integer");
    }
    if (!doc.contains("re")) throw FormatError("re", "missing");

    MatrixFile file;
    file.dim = static_cast<Index>(doc["dim"].get<long long>());
    file.re = parse_grid(doc, "re", file.dim);
    if (doc.contains("im")) {
        file.im = parse_grid(doc, "im", file.dim);
    } else {
        file.im.assign(static_cast<std::size_t>(file.dim), std::vector<double>(static_cast<std::size_t>(file.dim), 0.0));
    }
    return file;
}

std::string serialize_matrix_file(const MatrixFile& file) {
    json doc;
    doc["dim"] = file.dim;
    doc["re"] = file.re;
    doc["im"] = file.im;
    return doc.dump() + "\n";
}

MatrixFile to_matrix_file(const HermitianMatrix& m) {
    MatrixFile file;
    file.dim = m.dim();
    const auto d = static_cast<std::size_t>(m.dim());
    file.re.assign(d, std::vector<double>(d));
    file.im.assign(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Complex z = m(static_cast<Index>(i), static_cast<Index>(j));
            file.re[i][j] = z.real();
            file.im[i][j] = z.imag();
        }
    }
    return file;
}

HermitianMatrix to_hermitian(const MatrixFile& file, const NumericPolicy& policy) {
    ComplexMatrix raw(file.dim, file.dim);
    for (Index i = 0; i < file.dim; ++i) {
        for (Index j = 0; j < file.dim; ++j) {
            const auto si = static_cast<std::size_t>(i);
            const auto sj = static_cast<std::size_t>(j);
            raw(i, j) = Complex(file.re[si][sj], file.im[si][sj]);
        }
    }
    return construct_hermitian(raw, policy);
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("file", "cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_matrix_file(text.str());
}

std::string matrix_digest(const HermitianMatrix& m) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    feed(h, static_cast<std::uint64_t>(m.dim()));
    for (Index i = 0; i < m.dim(); ++i) {
        for (Index j = 0; j < m.dim(); ++j) {
            feed(h, std::bit_cast<std::uint64_t>(m(i, j).real()));
            feed(h, std::bit_cast<std::uint64_t>(m(i, j).imag()));
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace gtpinch::cli
