#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "formsum/form.hpp"
#include "formsum/fpd.hpp"
#include "formsum/integer.hpp"
#include "formsum/multiplicative.hpp"
#include "formsum/parallel.hpp"
#include "formsum/poly.hpp"
#include "formsum/primes.hpp"
#include "formsum/roots.hpp"

namespace formsum {

using Decimal = boost::multiprecision::cpp_dec_float_50;

struct SumValue {
  Rational sum = 0;
  std::uint64_t zeros_skipped = 0;
};

namespace detail {

// h(n) from a 64-bit factorization, with integer fast paths for the
// built-ins; the custom path goes through the exact rational rule.
struct HAccumulator {
  Integer int_part = 0;
  Rational rat_part = 0;

  void add(const MultFunc& h, const std::vector<std::pair<std::uint64_t, unsigned>>& factors) {
    switch (h.kind) {
      case MultKind::one:
        int_part += 1;
        return;
      case MultKind::tau: {
        std::uint64_t v = 1;
        for (const auto& [p, e] : factors) {
          (void)p;
          v *= e + 1;
        }
        int_part += v;
        return;
      }
      case MultKind::two_pow_omega:
        int_part += Integer(1) << factors.size();
        return;
      case MultKind::custom: {
        Rational v = 1;
        for (const auto& [p, e] : factors) v *= h.prime_power_rule(Integer(p), e);
        if (boost::multiprecision::denominator(v) == 1) {
          int_part += boost::multiprecision::numerator(v);
        } else {
          rat_part += v;
        }
        return;
      }
    }
  }

  Rational total() const { return rat_part + Rational(int_part); }
};

inline Rational h_of_u64(const MultFunc& h, std::uint64_t n) {
  HAccumulator acc;
  acc.add(h, factor_u64(n));
  return acc.total();
}

}  // namespace detail

// T(X; h, f) = sum over 1 <= n <= X of h(|f(n)|), skipping (and counting)
// the at most deg f terms with f(n) = 0.
inline SumValue t_sum(std::uint64_t x, const MultFunc& h, const Poly& f, unsigned jobs = 0) {
  if (f.is_zero()) throw std::invalid_argument("t_sum: zero polynomial");
  // |f| on [1, X] fits u64?  Bound sum |c_i| X^i.
  Integer bound = 0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    bound += boost::multiprecision::abs(f.coeffs()[i]) * ipow(Integer(x), static_cast<unsigned>(i));
  }
  const bool fast = bound < (Integer(1) << 62);
  struct Part {
    detail::HAccumulator acc;
    std::uint64_t zeros = 0;
  };
  auto chunk_fast = [&](std::uint64_t a, std::uint64_t b) {
    std::vector<long long> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeffs()[i].convert_to<long long>();
    Part part;
    for (std::uint64_t n = a; n < b; ++n) {
      long long v = 0;
      for (std::size_t i = c.size(); i-- > 0;) v = v * static_cast<long long>(n) + c[i];
      if (v == 0) {
        ++part.zeros;
        continue;
      }
      part.acc.add(h, factor_u64(static_cast<std::uint64_t>(v < 0 ? -v : v)));
    }
    return part;
  };
  auto chunk_slow = [&](std::uint64_t a, std::uint64_t b) {
    Part part;
    for (std::uint64_t n = a; n < b; ++n) {
      const Integer v = f.eval(Integer(n));
      if (v == 0) {
        ++part.zeros;
        continue;
      }
      Rational hv = 1;
      for (const auto& [p, e] : factorize(boost::multiprecision::abs(v)).factors) {
        hv *= h.prime_power_rule(p, e);
      }
      part.acc.rat_part += hv;
    }
    return part;
  };
  auto combine = [](Part lhs, Part rhs) {
    lhs.acc.int_part += rhs.acc.int_part;
    lhs.acc.rat_part += rhs.acc.rat_part;
    lhs.zeros += rhs.zeros;
    return lhs;
  };
  const Part total = fast ? chunked_reduce(1, x + 1, jobs, Part{}, chunk_fast, combine)
                          : chunked_reduce(1, x + 1, jobs, Part{}, chunk_slow, combine);
  return SumValue{total.acc.total(), total.zeros};
}

// S(X1, X2; h, F) over the positive rectangle, or over |n1| <= X1,
// |n2| <= X2 when symmetric is set; zero values of F are skipped and
// counted in either mode.
inline SumValue s_sum(std::uint64_t x1, std::uint64_t x2, const MultFunc& h, const BinaryForm& f,
                      unsigned jobs = 0, bool symmetric = false) {
  const unsigned d = f.degree();
  Integer bound = 0;
  for (unsigned j = 0; j <= d; ++j) {
    bound += boost::multiprecision::abs(f.coeff(j)) * ipow(Integer(x1), d - j) * ipow(Integer(x2), j);
  }
  const bool fast = bound < (Integer(1) << 62);
  struct Part {
    detail::HAccumulator acc;
    std::uint64_t zeros = 0;
  };
  // Rows indexed by n2; the inner loop runs over n1.  Each row reduces to a
  // one-variable polynomial whose coefficients are a_j n2^j.
  const long long lo1 = symmetric ? -static_cast<long long>(x1) : 1;
  const long long hi1 = static_cast<long long>(x1);
  auto row_values = [&](long long n2) {
    std::vector<Integer> c(d + 1, Integer(0));
    Integer pw = 1;
    for (unsigned j = 0; j <= d; ++j) {
      c[d - j] = f.coeff(j) * pw;
      pw *= n2;
    }
    return c;
  };
  auto process_row = [&](long long n2, Part& part) {
    const std::vector<Integer> c = row_values(n2);
    if (fast) {
      std::vector<long long> cl(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) cl[i] = c[i].convert_to<long long>();
      for (long long n1 = lo1; n1 <= hi1; ++n1) {
        long long v = 0;
        for (std::size_t i = cl.size(); i-- > 0;) v = v * n1 + cl[i];
        if (v == 0) {
          ++part.zeros;
          continue;
        }
        part.acc.add(h, factor_u64(static_cast<std::uint64_t>(v < 0 ? -v : v)));
      }
    } else {
      const Poly row{std::vector<Integer>(c)};
      for (long long n1 = lo1; n1 <= hi1; ++n1) {
        const Integer v = row.eval(Integer(n1));
        if (v == 0) {
          ++part.zeros;
          continue;
        }
        Rational hv = 1;
        for (const auto& [p, e] : factorize(boost::multiprecision::abs(v)).factors) {
          hv *= h.prime_power_rule(p, e);
        }
        part.acc.rat_part += hv;
      }
    }
  };
  const std::uint64_t rows = symmetric ? 2 * x2 + 1 : x2;
  auto chunk = [&](std::uint64_t a, std::uint64_t b) {
    Part part;
    for (std::uint64_t r = a; r < b; ++r) {
      const long long n2 = symmetric ? static_cast<long long>(r) - static_cast<long long>(x2)
                                     : static_cast<long long>(r) + 1;
      process_row(n2, part);
    }
    return part;
  };
  auto combine = [](Part lhs, Part rhs) {
    lhs.acc.int_part += rhs.acc.int_part;
    lhs.acc.rat_part += rhs.acc.rat_part;
    lhs.zeros += rhs.zeros;
    return lhs;
  };
  const Part total = chunked_reduce(0, rows, jobs, Part{}, chunk, combine);
  return SumValue{total.acc.total(), total.zeros};
}

// The Euler product
//   E = prod_{d < p <= min(X1,X2)} (1 + rho*_G(p)(h(p)-1)/p)
//     * prod_{i=1,2} prod_{p <= X_i} (1 + d_i (h(p)-1)/p),
// evaluated exactly.
inline Rational euler_product(const ShapeDecomposition& shape, const MultFunc& h, std::uint64_t x1,
                              std::uint64_t x2) {
  const std::uint64_t xmin = std::min(x1, x2);
  const std::uint64_t xmax = std::max(x1, x2);
  if (xmax > default_sieve().limit()) throw std::out_of_range("euler_product: X beyond sieve limit");
  Rational e = 1;
  for (std::uint32_t p : default_sieve().primes()) {
    if (p > xmax) break;
    const Rational hp = h.prime_power_rule(Integer(p), 1);
    const Rational hm1_over_p = (hp - 1) / p;
    if (p > shape.degree && p <= xmin) {
      const Integer rs = rho_star_prime(shape.g, p);
      e *= 1 + Rational(rs) * hm1_over_p;
    }
    if (shape.d1 == 1 && p <= x1) e *= 1 + hm1_over_p;
    if (shape.d2 == 1 && p <= x2) e *= 1 + hm1_over_p;
  }
  return e;
}

namespace detail {

// rho_f(p) for all primes p <= x, plus a prime-power cache for the m-sum.
class RhoTable {
 public:
  RhoTable(const Poly& f, std::uint64_t x) : f_(f) {
    if (x > default_sieve().limit()) throw std::out_of_range("RhoTable: X beyond sieve limit");
  }

  Integer at(std::uint64_t p, unsigned e) {
    const auto key = std::make_pair(p, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Integer v = rho_prime_power(f_, p, e);
    cache_.emplace(key, v);
    return v;
  }

 private:
  const Poly& f_;
  std::map<std::pair<std::uint64_t, unsigned>, Integer> cache_;
};

}  // namespace detail

// Right-hand side of the one-variable upper bound:
//   X * prod_{p <= X} (1 - rho_f(p)/p) * sum_{m <= X} rho_f(m) h(m) / m.
// Demands an fpd-free polynomial with nonzero discriminant.
namespace detail {

inline void require_fpd_free(const Poly& f, const char* who) {
  if (f.is_zero()) throw std::invalid_argument(std::string(who) + ": zero polynomial");
  if (!f.is_primitive()) throw std::invalid_argument(std::string(who) + ": f must be primitive");
  const auto fpds = fixed_prime_divisors(f);
  if (!fpds.empty()) {
    throw std::invalid_argument(std::string(who) + ": f has fixed prime divisor " +
                                std::to_string(fpds.front()) +
                                "; remove it first (remove_all_fpd / the reduce subcommand)");
  }
  if (discriminant(f) == 0) throw std::invalid_argument(std::string(who) + ": disc(f) = 0");
}

}  // namespace detail

inline Rational nair_rhs(std::uint64_t x, const MultFunc& h, const Poly& f) {
  if (x == 0) throw std::invalid_argument("nair_rhs: X must be >= 1");
  detail::require_fpd_free(f, "nair_rhs");
  detail::RhoTable rho_of(f, x);
  Rational prod = 1;
  for (std::uint32_t p : default_sieve().primes()) {
    if (p > x) break;
    prod *= 1 - Rational(rho_of.at(p, 1), p);
  }
  // Factor every m <= X with a smallest-prime-factor sieve and assemble
  // rho_f(m) h(m) multiplicatively.
  std::vector<std::uint32_t> spf(x + 1, 0);
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= x; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  Rational msum = 0;
  for (std::uint64_t m = 1; m <= x; ++m) {
    Rational term = 1;
    std::uint64_t rest = m;
    while (rest > 1) {
      const std::uint64_t p = spf[rest];
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      const Integer rho_pe = rho_of.at(p, e);
      if (rho_pe == 0) {
        term = 0;
        break;
      }
      term *= Rational(rho_pe) * h.prime_power_rule(Integer(p), e);
    }
    if (term != 0) msum += term / Integer(m);
  }
  return Rational(Integer(x)) * prod * msum;
}

// Exponential-form right-hand side: the product part is exact, the
// exponential factor exp(sum_{p <= X} h(p) rho_f(p) / p) is reported both as
// the exact exponent and as a 50-digit decimal of the full value.
struct NairExpRhs {
  Rational product_part;   // X * prod (1 - rho/p)
  Rational exponent_sum;   // sum h(p) rho(p) / p
  std::string decimal;     // product_part * exp(exponent_sum)
};

inline NairExpRhs nair_exp_rhs(std::uint64_t x, const MultFunc& h, const Poly& f) {
  if (x == 0) throw std::invalid_argument("nair_exp_rhs: X must be >= 1");
  detail::require_fpd_free(f, "nair_exp_rhs");
  Rational prod = 1;
  Rational esum = 0;
  detail::RhoTable rho_of(f, x);
  for (std::uint32_t p : default_sieve().primes()) {
    if (p > x) break;
    const Rational rp(rho_of.at(p, 1), p);
    prod *= 1 - rp;
    esum += h.prime_power_rule(Integer(p), 1) * rp;
  }
  NairExpRhs out;
  out.product_part = Rational(Integer(x)) * prod;
  out.exponent_sum = esum;
  const Decimal value = Decimal(out.product_part) * boost::multiprecision::exp(Decimal(esum));
  out.decimal = value.str();
  return out;
}

}  // namespace formsum
