#pragma once

// Exact arbitrary-precision integer/rational arithmetic plus the small
// combinatorial helpers used throughout the library.  All quantities the
// library reports (activities, sensitivities, Derrida values) are exact
// rationals; floating point appears only when a value is rendered as text.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace canal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// 2^e as a big integer (e >= 0).
inline BigInt pow2(std::uint64_t e) {
    BigInt x = 1;
    x <<= static_cast<unsigned>(e);
    return x;
}

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at every step: r is C(n-k+i, i)
    }
    return r;
}

inline Rational scale_pow10(const Rational& r, std::int64_t e10) {
    if (e10 == 0) return r;
    BigInt p = 1;
    for (std::int64_t i = 0; i < (e10 < 0 ? -e10 : e10); ++i) p *= 10;
    return e10 > 0 ? r * Rational(p) : r / Rational(p);
}

namespace detail {

/// Base-10 integer parse.  cpp_int's string constructor would read a
/// leading zero as an octal prefix, so "09375" must not reach it.
inline BigInt bigint_from_decimal(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("malformed integer literal: " + s);
        v = v * 10 + (s[i] - '0');
    }
    if (neg) v = -v;
    return v;
}

}  // namespace detail

/// Parse "p", "p/q" or a plain decimal like "-0.125" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt p = detail::bigint_from_decimal(text.substr(0, slash));
        BigInt q = detail::bigint_from_decimal(text.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in rational literal: " + text);
        return Rational(p, q);
    }
    auto dot = text.find('.');
    auto exp = text.find_first_of("eE");
    std::int64_t e10 = 0;
    std::string mant = text;
    if (exp != std::string::npos) {
        e10 = std::stoll(text.substr(exp + 1));
        mant = text.substr(0, exp);
        dot = mant.find('.');
    }
    if (dot == std::string::npos) {
        Rational r{detail::bigint_from_decimal(mant)};
        return scale_pow10(r, e10);
    }
    std::string digits = mant.substr(0, dot) + mant.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("malformed decimal literal: " + text);
    std::int64_t frac = static_cast<std::int64_t>(mant.size() - dot - 1);
    Rational r{detail::bigint_from_decimal(digits)};
    return scale_pow10(r, e10 - frac);
}

/// Canonical text form: "3", "-3/4".
inline std::string to_fraction_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Decimal rendering with `sig` significant digits, round half to even.
/// Trailing zeros are stripped so output is byte-stable and compact.
inline std::string to_decimal_string(const Rational& r, int sig = 12) {
    if (sig < 1) sig = 1;
    if (r == 0) return "0";
    BigInt p = numerator(r), q = denominator(r);
    bool neg = p < 0;
    if (neg) p = -p;

    // Find e with 10^e <= p/q < 10^(e+1).
    std::int64_t e = static_cast<std::int64_t>(p.str().size()) -
                     static_cast<std::int64_t>(q.str().size());
    auto cmp_pow10 = [&](std::int64_t k) {
        // sign of p/q - 10^k
        BigInt lhs = p, rhs = q;
        if (k >= 0)
            for (std::int64_t i = 0; i < k; ++i) rhs *= 10;
        else
            for (std::int64_t i = 0; i < -k; ++i) lhs *= 10;
        return lhs.compare(rhs);
    };
    while (cmp_pow10(e) < 0) --e;
    while (cmp_pow10(e + 1) >= 0) ++e;

    // Scale to sig digits and divide with half-even rounding.
    BigInt num = p, den = q;
    std::int64_t shift = sig - 1 - e;
    if (shift >= 0)
        for (std::int64_t i = 0; i < shift; ++i) num *= 10;
    else
        for (std::int64_t i = 0; i < -shift; ++i) den *= 10;
    BigInt digits = num / den, rem = num % den;
    BigInt twice = rem * 2;
    if (twice > den || (twice == den && (digits & 1) == 1)) ++digits;
    std::string ds = digits.str();
    if (static_cast<int>(ds.size()) > sig) {  // rounding overflowed into a new digit
        ds.pop_back();
        ++e;
    }
    while (ds.size() > 1 && ds.back() == '0') ds.pop_back();

    std::string out;
    if (e >= -4 && e <= 15) {
        if (e >= static_cast<std::int64_t>(ds.size()) - 1) {
            out = ds + std::string(e - (ds.size() - 1), '0');
        } else if (e >= 0) {
            out = ds.substr(0, e + 1) + "." + ds.substr(e + 1);
        } else {
            out = "0." + std::string(-e - 1, '0') + ds;
        }
    } else {
        out = ds.substr(0, 1);
        if (ds.size() > 1) out += "." + ds.substr(1);
        out += "e" + std::to_string(e);
    }
    return neg ? "-" + out : out;
}

}  // namespace canal
