#include <doctest.h>

#include "treewalk/numeric.hpp"

#include "test_util.hpp"

using namespace treewalk;
using treewalk_test::code_of;

TEST_CASE("binomial coefficients") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(60, 30) == BigInt("118264581564861424"));
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(5, -1) == 0);
}

TEST_CASE("integer and rational powers") {
    CHECK(pow_int(BigInt(3), 0) == 1);
    CHECK(pow_int(BigInt(2), 20) == 1048576);
    CHECK(pow_rat(BigRat(2, 3), 3) == BigRat(8, 27));
    CHECK(pow_rat(BigRat(2), -2) == BigRat(1, 4));
    CHECK(pow_rat(BigRat(5, 7), 0) == 1);
}

TEST_CASE("rational literals parse exactly") {
    CHECK(parse_rational("3/4") == BigRat(3, 4));
    CHECK(parse_rational("-3/4") == BigRat(-3, 4));
    CHECK(parse_rational("49/100") == BigRat(49, 100));
    CHECK(parse_rational("7") == BigRat(7));
    // Decimal digits after the point start with zeros routinely; none of
    // these may fall into cpp_int's leading-zero octal reading.
    CHECK(parse_rational("0.75") == BigRat(3, 4));
    CHECK(parse_rational("0.5") == BigRat(1, 2));
    CHECK(parse_rational("0.049") == BigRat(49, 1000));
    CHECK(parse_rational("075/100") == BigRat(3, 4));
    CHECK(parse_rational("-1.25e-2") == BigRat(-1, 80));
    CHECK(parse_rational("2.5e3") == BigRat(2500));
    CHECK(parse_rational("1e3") == BigRat(1000));
    CHECK(parse_rational("0.000") == BigRat(0));

    CHECK(code_of([] { parse_rational(""); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_rational("abc"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_rational("1.2.3"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_rational("0x10"); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("rational formatting and float round-trips") {
    CHECK(format_rational(BigRat(3, 4)) == "3/4");
    CHECK(format_rational(BigRat(-3, 4)) == "-3/4");
    CHECK(format_rational(BigRat(5)) == "5");
    CHECK(format_rational(BigRat(0)) == "0");
    CHECK(to_double(BigRat(1, 2)) == 0.5);
    CHECK(rat_from_double(0.5) == BigRat(1, 2));
    CHECK(rat_from_double(0.1) != BigRat(1, 10));  // binary64 is dyadic
    CHECK(abs_rat(BigRat(-2, 3)) == BigRat(2, 3));
}
