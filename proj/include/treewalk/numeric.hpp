#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "treewalk/errors.hpp"

namespace treewalk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// C(n, k) by running product with exact division. Negative or
// out-of-range lower index counts as an empty selection set.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        c *= n - j + 1;
        c /= j;  // exact at every step: c is a binomial coefficient
    }
    return c;
}

inline BigInt pow_int(const BigInt& base, std::uint64_t e) {
    BigInt acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// x^e for integer e, 0^0 = 1.
inline BigRat pow_rat(const BigRat& x, std::int64_t e) {
    if (e == 0) return BigRat(1);
    const bool neg = e < 0;
    const auto mag = static_cast<std::uint64_t>(neg ? -e : e);
    BigRat acc = 1, b = x;
    std::uint64_t rem = mag;
    while (rem > 0) {
        if (rem & 1) acc *= b;
        b *= b;
        rem >>= 1;
    }
    if (neg) {
        if (acc == 0) fail(ErrorCode::OutOfRange, "zero base with negative exponent");
        acc = BigRat(1) / acc;
    }
    return acc;
}

inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

inline BigRat abs_rat(const BigRat& x) { return x < 0 ? BigRat(-x) : x; }

// Every finite double is a dyadic rational; the conversion is exact.
inline BigRat rat_from_double(double x) {
    if (x != x) fail(ErrorCode::OutOfRange, "NaN has no rational value");
    BigRat r(x);
    return r;
}

namespace detail {
// cpp_int's string constructor reads numbers with a leading 0 as octal
// ("075" would become 61); validate and strip leading zeros first.
inline BigInt int_from_decimal(std::string s) {
    std::string sign;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        if (s[0] == '-') sign = "-";
        s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a decimal integer");
    const auto nz = s.find_first_not_of('0');
    s = nz == std::string::npos ? "0" : s.substr(nz);
    return BigInt(sign + s);
}
}  // namespace detail

// Accepts "a/b", "a", or a decimal literal like "0.75" / "-1.25e-2".
// Fraction and decimal forms are parsed exactly.
inline BigRat parse_rational(std::string_view text) {
    if (text.empty()) fail(ErrorCode::InvalidConfig, "empty rational literal");
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            const BigInt num = detail::int_from_decimal(s.substr(0, slash));
            const BigInt den = detail::int_from_decimal(s.substr(slash + 1));
            if (den == 0) fail(ErrorCode::InvalidConfig, "zero denominator in '" + s + "'");
            return BigRat(num, den);
        }
        const auto exp_pos = s.find_first_of("eE");
        std::string mantissa = exp_pos == std::string::npos ? s : s.substr(0, exp_pos);
        std::int64_t exp10 = exp_pos == std::string::npos ? 0 : std::stoll(s.substr(exp_pos + 1));
        const auto dot = mantissa.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<std::int64_t>(mantissa.size() - dot - 1);
            mantissa.erase(dot, 1);
        }
        if (mantissa.empty() || mantissa == "-" || mantissa == "+")
            fail(ErrorCode::InvalidConfig, "bad rational literal '" + s + "'");
        BigRat r{detail::int_from_decimal(mantissa)};
        const BigInt scale = pow_int(10, static_cast<std::uint64_t>(exp10 < 0 ? -exp10 : exp10));
        if (exp10 < 0) r /= BigRat(scale);
        else r *= BigRat(scale);
        return r;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidConfig, "bad rational literal '" + s + "'");
    }
}

// "a/b" for non-integers, plain decimal string for integers.
inline std::string format_rational(const BigRat& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace treewalk
