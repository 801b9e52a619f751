#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "formsum/integer.hpp"

namespace formsum {

// Eratosthenes sieve, built once and read-only afterwards; safe to share
// across threads.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint32_t limit) : limit_(limit), composite_((limit + 1), false) {
    composite_[0] = true;
    if (limit >= 1) composite_[1] = true;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
      if (composite_[i]) continue;
      for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
    }
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (!composite_[i]) primes_.push_back(i);
    }
  }

  std::uint32_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  bool is_prime(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("PrimeSieve::is_prime: beyond sieve limit");
    return n >= 2 && !composite_[static_cast<std::size_t>(n)];
  }

  // Primes in (lo, hi], both bounds inclusive-exclusive as stated.
  std::vector<std::uint32_t> primes_in(std::uint64_t lo, std::uint64_t hi) const {
    if (hi > limit_) throw std::out_of_range("PrimeSieve::primes_in: beyond sieve limit");
    std::vector<std::uint32_t> out;
    auto it = std::upper_bound(primes_.begin(), primes_.end(), lo);
    for (; it != primes_.end() && *it <= hi; ++it) out.push_back(*it);
    return out;
  }

 private:
  std::uint32_t limit_;
  std::vector<bool> composite_;
  std::vector<std::uint32_t> primes_;
};

inline constexpr std::uint32_t kDefaultSieveLimit = 1'000'000;

inline const PrimeSieve& default_sieve() {
  static const PrimeSieve sieve(kDefaultSieveLimit);
  return sieve;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1u;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin for 64-bit inputs (the 12-base set covers the
// full range).
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  const int s = __builtin_ctzll(n - 1);
  const std::uint64_t d = (n - 1) >> s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_brent_u64(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 gen(0x9e3779b97f4a7c15ull ^ n);
  while (true) {
    const std::uint64_t c = gen() % (n - 1) + 1;
    std::uint64_t y = gen() % n;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (mulmod_u64(y, y, n) + c) % n;
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (mulmod_u64(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

inline void factor_u64_into(std::uint64_t n, std::vector<std::pair<std::uint64_t, unsigned>>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.emplace_back(n, 1u);
    return;
  }
  const std::uint64_t d = pollard_brent_u64(n);
  factor_u64_into(d, out);
  factor_u64_into(n / d, out);
}

}  // namespace detail

// Trial division against the shared sieve up to a small cutoff, then
// Miller-Rabin plus Brent rho for whatever cofactor is left.  Sorted
// (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factor_u64: n must be >= 1");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n == 1) return out;
  constexpr std::uint64_t kTrialCutoff = 4096;
  for (std::uint32_t p : default_sieve().primes()) {
    const std::uint64_t pp = p;
    if (pp * pp > n || pp > kTrialCutoff) break;
    if (n % pp == 0) {
      unsigned e = 0;
      while (n % pp == 0) {
        n /= pp;
        ++e;
      }
      out.emplace_back(pp, e);
    }
  }
  if (n > 1) {
    std::vector<std::pair<std::uint64_t, unsigned>> rest;
    detail::factor_u64_into(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      unsigned e = 0;
      while (j < rest.size() && rest[j].first == rest[i].first) {
        e += rest[j].second;
        ++j;
      }
      out.emplace_back(rest[i].first, e);
      i = j;
    }
  }
  return out;
}

// Primality for arbitrary-size inputs.  Below 2^64 this is the deterministic
// test above; beyond that Miller-Rabin over a fixed battery of small-prime
// bases (ample for the magnitudes this artifact ever produces).
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  static const std::vector<std::uint32_t> bases = [] {
    PrimeSieve s(200);
    return s.primes();
  }();
  for (std::uint32_t p : bases) {
    if (n % p == 0) return n == p;
  }
  const Integer n1 = n - 1;
  unsigned s = 0;
  Integer d = n1;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint32_t a : bases) {
    Integer x = boost::multiprecision::powm(Integer(a), d, n);
    if (x == 1 || x == n1) continue;
    bool witness = true;
    for (unsigned i = 0; i + 1 < s; ++i) {
      x = (x * x) % n;
      if (x == n1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Exact factorization with a primality check on every reported prime.
struct FactoredInteger {
  Integer value = 1;
  std::vector<std::pair<Integer, unsigned>> factors;  // strictly increasing primes

  Integer reassembled() const {
    Integer r = 1;
    for (const auto& [p, e] : factors) r *= ipow(p, e);
    return r;
  }
};

namespace detail {

inline void factor_big_into(Integer n, std::vector<std::pair<Integer, unsigned>>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1u);
    return;
  }
  // Brent rho on cpp_int; only reached for composites beyond 64 bits.
  Integer c = 1;
  while (true) {
    Integer x = 2, y = 2, g = 1;
    while (g == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      g = boost::multiprecision::gcd(x > y ? x - y : y - x, n);
    }
    if (g != n) {
      factor_big_into(g, out);
      factor_big_into(n / g, out);
      return;
    }
    ++c;
  }
}

}  // namespace detail

inline FactoredInteger factorize(const Integer& n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  FactoredInteger result;
  result.value = n;
  if (n == 1) return result;
  if (fits_u64(n)) {
    for (const auto& [p, e] : factor_u64(to_u64(n))) {
      result.factors.emplace_back(Integer(p), e);
    }
    return result;
  }
  Integer rest = n;
  for (std::uint32_t p : default_sieve().primes()) {
    if (Integer(p) * p > rest) break;
    if (rest % p == 0) {
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      result.factors.emplace_back(Integer(p), e);
    }
    if (rest == 1) break;
  }
  if (rest > 1) {
    if (fits_u64(rest)) {
      for (const auto& [p, e] : factor_u64(to_u64(rest))) {
        result.factors.emplace_back(Integer(p), e);
      }
    } else {
      std::vector<std::pair<Integer, unsigned>> tail;
      detail::factor_big_into(rest, tail);
      std::sort(tail.begin(), tail.end());
      for (std::size_t i = 0; i < tail.size();) {
        std::size_t j = i;
        unsigned e = 0;
        while (j < tail.size() && tail[j].first == tail[i].first) {
          e += tail[j].second;
          ++j;
        }
        result.factors.emplace_back(tail[i].first, e);
        i = j;
      }
    }
  }
  std::sort(result.factors.begin(), result.factors.end());
  return result;
}

inline FactoredInteger factorize_u64(std::uint64_t n) { return factorize(Integer(n)); }

}  // namespace formsum
