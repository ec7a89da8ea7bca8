#include "gsmodel/rational.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using gsm::Rational;
using gsm::parse_rational;
using gsm::rat;

TEST(Rational, ParsesDecimalsExactly)
{
    EXPECT_EQ(parse_rational("-37.55"), Rational(-751, 20));
    EXPECT_EQ(parse_rational("0.33"), Rational(33, 100));
    EXPECT_EQ(parse_rational("42"), Rational(42));
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
}

TEST(Rational, RejectsMalformedInput)
{
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1.2.3"), std::invalid_argument);
}

TEST(Rational, ToStringRoundTrips)
{
    for (const Rational& x : {Rational(0), Rational(-751, 20), Rational(1, 3), rat("22.21024"),
                              Rational(-7, 1024)}) {
        EXPECT_EQ(parse_rational(gsm::to_string(x)), x) << gsm::to_string(x);
    }
    EXPECT_EQ(gsm::to_string(Rational(-751, 20)), "-37.55");
    EXPECT_EQ(gsm::to_string(Rational(1, 3)), "1/3");
}

TEST(Rational, FixedRounding)
{
    EXPECT_EQ(gsm::to_fixed(rat("22.21024"), 2), "22.21");
    EXPECT_EQ(gsm::to_fixed(rat("-4.5036"), 1), "-4.5");
}
