#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "lipfree/errors.hpp"

namespace lipfree {

// Exact rational scalar used for every distance, weight and function value.
// Expression templates are disabled so `auto` always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

// Parses "p", "-p", "p/q" or "-p/q" (q > 0). Anything else, including decimal
// notation, is rejected.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den)) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  const Integer n{std::string(num)};
  const Integer d{std::string(den)};
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r{n, d};
  return negative ? Rational{-r} : r;
}

// Canonical rendering: "p/q" with gcd(p, q) = 1 and q > 0, or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational{-r} : r; }

// 2^-k as an exact rational.
inline Rational pow2_neg(unsigned k) {
  Integer den{1};
  den <<= k;
  return Rational{Integer{1}, den};
}

}  // namespace lipfree
