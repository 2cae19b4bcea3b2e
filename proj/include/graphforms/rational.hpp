#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphforms {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// Exact integer part for integral rationals only.
inline Int as_integer(const Rational& q) {
    if (!is_integer(q)) throw std::invalid_argument("as_integer: not an integer: " + q.str());
    return numerator(q);
}

inline Int int_gcd(const Int& a, const Int& b) { return gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return lcm(a, b); }

/// gcd on rationals: gcd(p1/q1, p2/q2) = gcd(p1 q2, p2 q1) / (q1 q2).
/// Generates the same subgroup of (Q,+) as {a, b}.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Int num = gcd(numerator(a) * denominator(b), numerator(b) * denominator(a));
    Int den = denominator(a) * denominator(b);
    return Rational(num, den);
}

/// Writes a rational in canonical lowest terms, "p" or "p/q".
inline std::string rational_str(const Rational& q) { return q.str(); }

/// Parses "p", "-p", or "p/q"; rejects zero denominators.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: '" + s + "'");
    }
}

}  // namespace graphforms
