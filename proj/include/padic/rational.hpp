#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "padic/errors.hpp"

namespace padic {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. The universal scalar for every exact computation here.
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

// num/den as a normalized Rational. The two-argument number constructor
// insists on canonical input, so normalization goes through division.
inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("make_rational: zero denominator");
    Rational r(num);
    r /= Rational(den);
    return r;
}

inline Int pow_int(std::int64_t base, int exp) {
    if (exp < 0) throw domain_error("pow_int: negative exponent");
    return boost::multiprecision::pow(Int(base), static_cast<unsigned>(exp));
}

// p^e as an exact rational, e of either sign.
inline Rational pow_rational(std::int64_t p, int e) {
    if (e >= 0) return Rational(pow_int(p, e));
    return make_rational(Int(1), pow_int(p, -e));
}

namespace detail {

inline int count_factor(Int n, std::int64_t p) {
    n = abs(n);
    int c = 0;
    while (n % p == 0) {
        n /= p;
        ++c;
    }
    return c;
}

}  // namespace detail

inline int valuation(std::int64_t n, std::int64_t p) {
    if (n == 0) throw domain_error("valuation: argument is zero");
    return detail::count_factor(Int(n), p);
}

// nu_p(q) = (power of p in the numerator) - (power of p in the denominator).
inline int valuation(const Rational& q, std::int64_t p) {
    if (q == 0) throw domain_error("valuation: argument is zero");
    return detail::count_factor(numerator(q), p) - detail::count_factor(denominator(q), p);
}

// |q|_p = p^(-nu_p(q)) with the convention |0|_p = 0.
inline Rational padic_abs(const Rational& q, std::int64_t p) {
    if (q == 0) return Rational(0);
    return pow_rational(p, -valuation(q, p));
}

// The unique s with p^s <= r < p^(s+1). Thresholds that are not powers of p
// snap down to the nearest one, which is the effective ball radius in Z_p.
inline int snap_radius(const Rational& r, std::int64_t p) {
    if (r <= 0) throw domain_error("snap_radius: radius must be positive");
    if (r >= 1) {
        int s = 0;
        Int v(1);
        while (Rational(v * p) <= r) {
            v *= p;
            ++s;
        }
        return s;
    }
    int s = -1;
    Rational v = make_rational(Int(1), Int(p));
    while (v > r) {
        v /= p;
        --s;
    }
    return s;
}

// Extended Euclid; requires gcd(a, m) = 1 and m >= 1.
inline Int mod_inverse(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    Int r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw domain_error("mod_inverse: arguments are not coprime");
    s0 %= m;
    if (s0 < 0) s0 += m;
    return s0;
}

inline Int mod_reduce(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

// Serialized form used in every report: "num/den", lowest terms, den >= 1.
inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "num" or "num/den"; the result is normalized. Rejects a denominator
// of zero and any non-reduced "num/den" pair, so emitted strings round-trip
// to the identical value.
inline Rational parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw domain_error("parse_fraction: denominator must be positive in '" + s + "'");
        if (gcd(abs(num), den) != 1)
            throw domain_error("parse_fraction: '" + s + "' is not in lowest terms");
        return make_rational(num, den);
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw domain_error("parse_fraction: malformed rational '" + s + "'");
    }
}

// Rational -> double via a 64-bit scaled quotient; safe for operands far
// beyond double range.
inline double to_double(const Rational& q) {
    using boost::multiprecision::msb;
    if (q == 0) return 0.0;
    Int num = numerator(q);
    Int den = denominator(q);
    const bool neg = num < 0;
    if (neg) num = -num;
    const long shift = static_cast<long>(msb(den)) + 64 - static_cast<long>(msb(num));
    if (shift > 0)
        num <<= shift;
    else
        den <<= -shift;
    const double d = (num / den).convert_to<double>();
    return std::ldexp(neg ? -d : d, static_cast<int>(-shift));
}

}  // namespace padic
