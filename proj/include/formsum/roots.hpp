#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "formsum/form.hpp"
#include "formsum/integer.hpp"
#include "formsum/poly.hpp"
#include "formsum/primes.hpp"

namespace formsum {

namespace detail {

// Coefficients of f reduced into [0, m).
inline std::vector<std::uint64_t> coeffs_mod(const Poly& f, std::uint64_t m) {
  std::vector<std::uint64_t> c(f.coeffs().size());
  const Integer mm = m;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer r = f.coeffs()[i] % mm;
    if (r < 0) r += mm;
    c[i] = to_u64(r);
  }
  return c;
}

inline std::uint64_t horner_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t m) {
  std::uint64_t r = 0;
  if (m <= (1ull << 32)) {
    for (std::size_t i = c.size(); i-- > 0;) r = (r * x + c[i]) % m;
  } else {
    for (std::size_t i = c.size(); i-- > 0;) r = (mulmod_u64(r, x, m) + c[i]) % m;
  }
  return r;
}

}  // namespace detail

// rho_f(m) by enumeration of all residues; the oracle the lifted path is
// checked against.
inline Integer rho_brute(const Poly& f, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("rho_brute: m must be >= 1");
  if (m == 1) return 1;
  const auto c = detail::coeffs_mod(f, m);
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n < m; ++n) {
    if (detail::horner_mod(c, n, m) == 0) ++count;
  }
  return Integer(count);
}

namespace detail {

// Number of roots of f modulo p^ell for f with content coprime to p.
// Simple roots mod p lift uniquely to every higher power; a singular root a
// recurses on f(a + p t) with its p-power content stripped, which lowers
// ell by at least one each call.
inline Integer count_lifted(const Poly& f, std::uint64_t p, unsigned ell) {
  if (ell == 0) return 1;
  const auto cmod = coeffs_mod(f, p);
  if (ell == 1) {
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < p; ++a) {
      if (horner_mod(cmod, a, p) == 0) ++count;
    }
    return Integer(count);
  }
  const auto dmod = coeffs_mod(f.derivative(), p);
  Integer total = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    if (horner_mod(cmod, a, p) != 0) continue;
    if (horner_mod(dmod, a, p) != 0) {
      total += 1;
      continue;
    }
    const Poly g = f.compose_affine(Integer(p), Integer(a));
    const unsigned v = valuation(g.content(), Integer(p));
    if (v >= ell) {
      total += ipow(Integer(p), ell - 1);
    } else {
      const Poly g1 = g.divided_by_integer(ipow(Integer(p), v));
      total += ipow(Integer(p), v - 1) * count_lifted(g1, p, ell - v);
    }
  }
  return total;
}

}  // namespace detail

// rho_f(p^ell) by recursive lifting.
inline Integer rho_prime_power(const Poly& f, std::uint64_t p, unsigned ell) {
  if (f.is_zero()) throw std::invalid_argument("rho_prime_power: zero polynomial");
  if (ell == 0) return 1;
  const unsigned c = valuation(f.content(), Integer(p));
  if (c >= ell) return ipow(Integer(p), ell);
  const Poly f1 = c == 0 ? f : f.divided_by_integer(ipow(Integer(p), c));
  return ipow(Integer(p), c) * detail::count_lifted(f1, p, ell - c);
}

struct RootCount {
  Integer modulus;
  Integer count;
  std::string method;  // brute | lifted | crt-combined
};

// Threshold below which the multiplicative evaluation is cross-checked
// against the enumeration oracle.
inline constexpr std::uint64_t kRhoBruteCrossCheckLimit = 10'000;

// rho_f(m) assembled multiplicatively from prime-power counts.
inline RootCount rho(const Poly& f, const FactoredInteger& m) {
  if (f.is_zero()) throw std::invalid_argument("rho: zero polynomial");
  if (m.value < 1) throw std::invalid_argument("rho: m must be >= 1");
  Integer count = 1;
  for (const auto& [p, e] : m.factors) {
    count *= rho_prime_power(f, to_u64(p), e);
  }
  std::string method = m.factors.size() >= 2 ? "crt-combined" : "lifted";
  if (m.value == 1) method = "lifted";
  if (fits_u64(m.value) && to_u64(m.value) <= kRhoBruteCrossCheckLimit) {
    if (rho_brute(f, to_u64(m.value)) != count) {
      throw std::logic_error("rho: lifted count disagrees with enumeration at m = " + m.value.str());
    }
  }
  return RootCount{m.value, count, method};
}

inline Integer rho_value(const Poly& f, const Integer& m) { return rho(f, factorize(m)).count; }

// Normalized pair count (1/phi(m)) #{(n1,n2) in (0,m]^2 : gcd(n1,n2,m)=1,
// F(n1,n2) = 0 mod m}.
struct RhoStarResult {
  Integer modulus;
  Rational value;
  Integer pair_count;
};

inline RhoStarResult rho_star_brute(const BinaryForm& f, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("rho_star_brute: m must be >= 1");
  const unsigned d = f.degree();
  // Coefficients of F(x, n2) as a polynomial in x, reduced mod m, built per
  // row: coefficient of x^(d-j) is a_j n2^j.
  std::vector<std::uint64_t> amod(d + 1);
  {
    const Integer mm = m;
    for (unsigned j = 0; j <= d; ++j) {
      Integer r = f.coeff(j) % mm;
      if (r < 0) r += mm;
      amod[j] = to_u64(r);
    }
  }
  auto mul = [m](std::uint64_t x, std::uint64_t y) {
    return m <= (1ull << 32) ? (x * y) % m : detail::mulmod_u64(x, y, m);
  };
  std::uint64_t count = 0;
  std::vector<std::uint64_t> row(d + 1);
  for (std::uint64_t n2 = 1; n2 <= m; ++n2) {
    std::uint64_t pw = 1;
    const std::uint64_t n2r = n2 % m;
    for (unsigned j = 0; j <= d; ++j) {
      row[d - j] = mul(amod[j], pw);
      pw = mul(pw, n2r);
    }
    for (std::uint64_t n1 = 1; n1 <= m; ++n1) {
      if (std::gcd(std::gcd(n1, n2), m) != 1) continue;
      if (detail::horner_mod(row, n1 % m, m) == 0) ++count;
    }
  }
  const Integer phi = euler_phi(Integer(m));
  return RhoStarResult{Integer(m), Rational(Integer(count), phi), Integer(count)};
}

// rho*_G(p) at a prime via the root-count identity: rho_{G(x,1)}(p), plus
// one when p | G(1,0) (the solutions with p | n2).  Requires G(1,0) != 0;
// swap the variables first otherwise.
inline Integer rho_star_prime(const BinaryForm& g, std::uint64_t p) {
  const Integer g10 = g.coeff(0);  // G(1, 0)
  if (g10 == 0) {
    throw std::invalid_argument("rho_star_prime: G(1,0) = 0; swap the variables first");
  }
  const Poly gx1 = g.dehomog_x();
  Integer r = rho_brute(gx1, p);
  if (g10 % Integer(p) == 0) r += 1;
  return r;
}

// Exact check of rho_f(p^ell) <= min{d p^(ell-1), 2 d^3 p^((1-1/d) ell)}.
// The fractional power is compared as rho^d <= (2d^3)^d p^((d-1) ell).
struct PrimePowerBoundReport {
  std::uint64_t p;
  unsigned ell;
  unsigned degree;
  Integer rho;
  Integer linear_bound;         // d p^(ell-1)
  bool linear_ok;
  bool fractional_ok;
  bool pass;
};

inline PrimePowerBoundReport check_dan_bound(const Poly& f, std::uint64_t p, unsigned ell) {
  if (ell == 0) throw std::invalid_argument("check_dan_bound: ell must be >= 1");
  if (f.is_zero() || f.content() % Integer(p) == 0) {
    throw std::invalid_argument("check_dan_bound: p divides all coefficients of f");
  }
  const unsigned d = static_cast<unsigned>(f.degree());
  if (d == 0) throw std::invalid_argument("check_dan_bound: constant polynomial");
  PrimePowerBoundReport rep;
  rep.p = p;
  rep.ell = ell;
  rep.degree = d;
  rep.rho = rho_prime_power(f, p, ell);
  rep.linear_bound = Integer(d) * ipow(Integer(p), ell - 1);
  rep.linear_ok = rep.rho <= rep.linear_bound;
  const Integer lhs = ipow(rep.rho, d);
  const Integer rhs = ipow(Integer(2) * d * d * d, d) * ipow(Integer(p), (d - 1) * ell);
  rep.fractional_ok = lhs <= rhs;
  rep.pass = rep.linear_ok && rep.fractional_ok;
  return rep;
}

}  // namespace formsum
