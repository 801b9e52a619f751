#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace formsum {

// Exact arithmetic everywhere: Euler products, bound ratios and certificate
// identities must be reproducible bit for bit, so no floating point leaks
// into the core types.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(const Integer& base, unsigned exp) {
  Integer r = 1;
  Integer b = base;
  unsigned e = exp;
  while (e != 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

inline Rational rpow(const Rational& base, unsigned exp) {
  Rational r = 1;
  Rational b = base;
  unsigned e = exp;
  while (e != 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

// Largest e with p^e | n.  n must be nonzero, p >= 2.
inline unsigned valuation(Integer n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
  if (p < 2) throw std::invalid_argument("valuation: p must be >= 2");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline bool fits_u64(const Integer& n) {
  return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max();
}

inline std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw std::overflow_error("to_u64: value out of range");
  return n.convert_to<std::uint64_t>();
}

// "p/q" when q > 1, plain integer otherwise.  This is the exact-cell format
// used in CSV output and JSON records.
inline std::string to_string_exact(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Parses "123", "-4/5" or a decimal literal like "2.5" (which is exact:
// 25/10).  Used for thresholds so that configuration never goes through
// binary floating point.
inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("rational_from_string: empty");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Integer num(text.substr(0, slash));
    const Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(Integer(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const auto frac_len = text.size() - dot - 1;
  if (frac_len == 0) return Rational(Integer(digits));
  return Rational(Integer(digits), ipow(10, static_cast<unsigned>(frac_len)));
}

}  // namespace formsum
