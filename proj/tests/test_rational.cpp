#include <gtest/gtest.h>

#include "sspdo/error.hpp"
#include "sspdo/rational.hpp"

using namespace sspdo;

TEST(ParseCoefficient, RationalRoundsOnce) {
    EXPECT_EQ(parse_coefficient("1/3"), 1.0 / 3.0);
    EXPECT_EQ(parse_coefficient("2/6"), 1.0 / 3.0);
    EXPECT_EQ(parse_coefficient("-3/4"), -0.75);
    EXPECT_EQ(parse_coefficient("3/-4"), -0.75);
    EXPECT_EQ(parse_coefficient("7"), 7.0);
    EXPECT_EQ(parse_coefficient("0.25"), 0.25);
}

TEST(ParseCoefficient, RejectsMalformedInput) {
    EXPECT_THROW(parse_coefficient("1/0"), Error);
    EXPECT_THROW(parse_coefficient("a/3"), Error);
    EXPECT_THROW(parse_coefficient(""), Error);
    EXPECT_THROW(parse_coefficient("1e999"), Error);
}

TEST(ParseCoefficient, ErrorCodeIsParseError) {
    try {
        parse_coefficient("x");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(RationalString, RecoversSmallFractions) {
    EXPECT_EQ(to_rational_string(1.0 / 3.0), "1/3");
    EXPECT_EQ(to_rational_string(-2.0 / 3.0), "-2/3");
    EXPECT_EQ(to_rational_string(0.25), "1/4");
    EXPECT_EQ(to_rational_string(5.0), "5");
    EXPECT_EQ(to_rational_string(0.0), "0");
}

TEST(RationalString, RoundTripIsBitExact) {
    for (int q = 1; q <= 40; ++q)
        for (int p = -q; p <= q; ++p) {
            const double x = static_cast<double>(p) / static_cast<double>(q);
            const auto s = to_rational_string(x);
            ASSERT_TRUE(s.has_value());
            EXPECT_EQ(parse_coefficient(*s), x);
        }
}

TEST(RationalString, IrrationalHasNoShortForm) {
    EXPECT_FALSE(to_rational_string(std::sqrt(2.0)).has_value());
}
