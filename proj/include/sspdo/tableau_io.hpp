#pragma once

// JSON tableau files: {"name": ..., "A": [[...]], "b": [...], "c": [...]?, "bbar": [[...]]?}.
// Coefficients are numbers or "p/q" strings.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "sspdo/error.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/rational.hpp"
#include "sspdo/tableau.hpp"

namespace sspdo {

struct TableauFile {
    ButcherTableau tableau;
    std::optional<DenseWeights> weights;
};

namespace detail {

inline double json_coefficient(const nlohmann::json& v, const std::string& field) {
    try {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) return parse_coefficient(v.get<std::string>());
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "field " + field + ": " + e.what());
    }
    throw Error(ErrorCode::ParseError, "field " + field + ": expected a number or \"p/q\" string");
}

inline Vector json_vector(const nlohmann::json& v, const std::string& field) {
    if (!v.is_array()) throw Error(ErrorCode::ParseError, "field " + field + ": expected an array");
    Vector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(json_coefficient(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline Matrix json_matrix(const nlohmann::json& v, const std::string& field, std::optional<std::size_t> width) {
    if (!v.is_array() || v.empty())
        throw Error(ErrorCode::ParseError, "field " + field + ": expected a non-empty array of rows");
    const std::size_t cols = width.value_or(v[0].is_array() ? v[0].size() : 0);
    Matrix m(v.size(), cols);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string row_field = field + "[" + std::to_string(i) + "]";
        const Vector row = json_vector(v[i], row_field);
        if (row.size() != cols)
            throw Error(ErrorCode::ParseError, "field " + row_field + ": row has " + std::to_string(row.size()) +
                                                   " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
    }
    return m;
}

inline nlohmann::json coefficient_json(double x) {
    if (auto r = to_rational_string(x)) return *r;
    return x;
}

}  // namespace detail

inline TableauFile parse_tableau_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Report the line of the byte offset the parser stopped at.
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
    if (!doc.contains("A")) throw Error(ErrorCode::ParseError, "missing field A");
    if (!doc.contains("b")) throw Error(ErrorCode::ParseError, "missing field b");

    const Vector b = detail::json_vector(doc["b"], "b");
    const Matrix a = detail::json_matrix(doc["A"], "A", b.size());
    if (a.rows() != b.size())
        throw Error(ErrorCode::ParseError, "field A: has " + std::to_string(a.rows()) + " rows, b has " +
                                               std::to_string(b.size()) + " entries");
    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw Error(ErrorCode::ParseError, "field name: expected a string");
        name = doc["name"].get<std::string>();
    }
    TableauFile out{validate_tableau(a, b, name), std::nullopt};

    if (doc.contains("c")) {
        const Vector c = detail::json_vector(doc["c"], "c");
        if (c.size() != b.size()) throw Error(ErrorCode::ParseError, "field c: wrong length");
        for (std::size_t i = 0; i < c.size(); ++i)
            if (std::abs(c[i] - out.tableau.c()[i]) > kExactTol)
                throw Error(ErrorCode::ParseError, "field c[" + std::to_string(i) +
                                                       "]: does not equal the row sum of A");
    }
    if (doc.contains("bbar")) {
        const Matrix w = detail::json_matrix(doc["bbar"], "bbar", std::nullopt);
        if (w.rows() != b.size())
            throw Error(ErrorCode::ParseError, "field bbar: has " + std::to_string(w.rows()) + " rows, expected " +
                                                   std::to_string(b.size()));
        out.weights = DenseWeights(w);
    }
    return out;
}

inline TableauFile load_tableau_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_tableau_json(buf.str());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ParseError) throw;
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

inline nlohmann::json weights_json(const DenseWeights& w) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t j = 0; j < w.stages(); ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k <= w.degree(); ++k) row.push_back(detail::coefficient_json(w.coeffs()(j, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json tableau_json(const ButcherTableau& t, const DenseWeights* w = nullptr) {
    nlohmann::json doc;
    if (!t.name().empty()) doc["name"] = t.name();
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < t.stages(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < t.stages(); ++j) row.push_back(detail::coefficient_json(t.A()(i, j)));
        a.push_back(std::move(row));
    }
    doc["A"] = std::move(a);
    nlohmann::json b = nlohmann::json::array();
    for (double x : t.b()) b.push_back(detail::coefficient_json(x));
    doc["b"] = std::move(b);
    if (w != nullptr) doc["bbar"] = weights_json(*w);
    return doc;
}

inline void save_tableau_file(const std::filesystem::path& path, const ButcherTableau& t,
                              const DenseWeights* w = nullptr) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << tableau_json(t, w).dump(2) << '\n';
}

}  // namespace sspdo
