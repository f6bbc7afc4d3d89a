#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "sspdo/dense_construct.hpp"
#include "sspdo/error.hpp"
#include "sspdo/registry.hpp"
#include "sspdo/tableau_io.hpp"

using namespace sspdo;

namespace {

ErrorCode parse_error_code(const std::string& text, std::string* message = nullptr) {
    try {
        (void)parse_tableau_json(text);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    ADD_FAILURE() << "no error for: " << text;
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(TableauIo, RationalStringsSumExactly) {
    const auto f = parse_tableau_json(R"({"A": [[0,0,0],["1/2",0,0],["1/2","1/2",0]], "b": ["1/3","1/3","1/3"]})");
    EXPECT_EQ(f.tableau.stages(), 3u);
    EXPECT_EQ(f.tableau.b()[0], 1.0 / 3.0);
    EXPECT_EQ(f.tableau.c()[2], 1.0);
    EXPECT_FALSE(f.weights.has_value());
}

TEST(TableauIo, RoundTripWithWeights) {
    const auto t = registry::ssp332();
    const auto w = second_order_weights(t);
    const std::string text = tableau_json(t, &w).dump();
    EXPECT_NE(text.find("\"1/6\""), std::string::npos);
    const auto f = parse_tableau_json(text);
    EXPECT_EQ(f.tableau.name(), "ssp332");
    EXPECT_EQ(max_abs_difference(f.tableau.A(), t.A()), 0.0);
    EXPECT_EQ(f.tableau.b(), t.b());
    ASSERT_TRUE(f.weights.has_value());
    EXPECT_EQ(max_abs_difference(f.weights->coeffs(), w.coeffs()), 0.0);
}

TEST(TableauIo, FileRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "sspdo_tableau_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "family5.json";
    const auto t = family_tableau(5);
    save_tableau_file(path, t);
    const auto f = load_tableau_file(path);
    EXPECT_EQ(max_abs_difference(f.tableau.A(), t.A()), 0.0);
    std::filesystem::remove_all(dir);
}

TEST(TableauIo, ShippedFilesMatchRegistry) {
    const std::filesystem::path data = SSPDO_DATA_DIR;
    for (const char* key : {"ssp222", "ssp322", "ssp332", "numexample-322"}) {
        const auto f = load_tableau_file(data / (std::string(key) + ".json"));
        const auto e = registry::find(key);
        ASSERT_TRUE(e.has_value()) << key;
        EXPECT_LT(max_abs_difference(f.tableau.A(), e->tableau.A()), 1e-15) << key;
        ASSERT_TRUE(f.weights.has_value()) << key;
        EXPECT_LT(max_abs_difference(f.weights->coeffs(), e->weights->coeffs()), 1e-15) << key;
    }
}

TEST(TableauIo, RaggedRowsAreParseErrors) {
    std::string msg;
    EXPECT_EQ(parse_error_code(R"({"A": [[0,0],[1]], "b": [0.5,0.5]})", &msg), ErrorCode::ParseError);
    EXPECT_NE(msg.find("A[1]"), std::string::npos);
}

TEST(TableauIo, SyntaxErrorReportsLine) {
    std::string msg;
    EXPECT_EQ(parse_error_code("{\n\"A\": [[0]],\n\"b\": [1,]\n}", &msg), ErrorCode::ParseError);
    EXPECT_NE(msg.find("line 3"), std::string::npos);
}

TEST(TableauIo, FieldErrors) {
    EXPECT_EQ(parse_error_code(R"({"b": [1]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error_code(R"({"A": [[0]]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error_code(R"({"A": [["x"]], "b": [1]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error_code(R"({"A": [[0]], "b": [1], "c": [0.5]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error_code(R"({"A": [[0]], "b": [1], "bbar": [[0,1],[0,1]]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error_code("[1,2]"), ErrorCode::ParseError);
    // Structural problems surface with their own codes.
    EXPECT_EQ(parse_error_code(R"({"A": [[0,0],[0,0]], "b": [0.5,0.5]})"), ErrorCode::ZeroRowViolation);
}

TEST(TableauIo, MissingFile) {
    try {
        (void)load_tableau_file("/nonexistent/dir/t.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}
