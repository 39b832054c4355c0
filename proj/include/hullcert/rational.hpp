#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "hullcert/errors.hpp"

namespace hullcert {

/// Exact rational scalar. Always in lowest terms with positive denominator
/// (maintained by the backend); the only number type in the library, no
/// floating point anywhere.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw validation_error("rational with zero denominator");
    return Rational(num) / Rational(den);
}

/// Canonical string form: "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.str(); }

namespace detail {

inline BigInt parse_integer(std::string_view s) {
    if (s.empty()) throw validation_error("empty integer in rational string");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw validation_error("bare sign in rational string");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw validation_error("invalid character in rational string: '" + std::string(s) + "'");
    return BigInt(std::string(s));
}

} // namespace detail

/// Parses "p/q" or "p". Rejects q <= 0 and anything but an optional leading
/// '-' and digits on each side. The result is canonical: construction goes
/// through exact division, not mpq_set_str (which would skip canonicalization).
inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
    BigInt num = detail::parse_integer(s.substr(0, slash));
    BigInt den = detail::parse_integer(s.substr(slash + 1));
    if (den <= 0) throw validation_error("rational denominator must be positive: '" + std::string(s) + "'");
    return Rational(num) / Rational(den);
}

inline BigInt floor_rational(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt quot = num / den; // truncates toward zero
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

inline BigInt ceil_rational(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt quot = num / den;
    if (num > 0 && quot * den != num) ++quot;
    return quot;
}

/// Smallest integer strictly greater than q.
inline BigInt next_integer_above(const Rational& q) { return floor_rational(q) + 1; }

} // namespace hullcert
