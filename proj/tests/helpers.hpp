#pragma once

// Shared test utilities: seeded generators for random polynomials and forms,
// and independent brute-force oracles the library paths are checked against.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "formsum/form.hpp"
#include "formsum/integer.hpp"
#include "formsum/poly.hpp"

namespace testutil {

using formsum::BinaryForm;
using formsum::Integer;
using formsum::Poly;
using formsum::Rational;

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eed5eedull) { return std::mt19937_64(seed); }

inline Integer random_int(std::mt19937_64& rng, long long lo, long long hi) {
  std::uniform_int_distribution<long long> dist(lo, hi);
  return Integer(dist(rng));
}

inline Poly random_poly(std::mt19937_64& rng, unsigned degree, long long coeff_bound) {
  std::vector<Integer> c(degree + 1);
  for (auto& v : c) v = random_int(rng, -coeff_bound, coeff_bound);
  while (c[degree] == 0) c[degree] = random_int(rng, -coeff_bound, coeff_bound);
  return Poly(std::move(c));
}

// Random primitive polynomial with nonzero discriminant.
inline Poly random_squarefree_primitive_poly(std::mt19937_64& rng, unsigned min_deg, unsigned max_deg,
                                             long long coeff_bound) {
  std::uniform_int_distribution<unsigned> deg_dist(min_deg, max_deg);
  while (true) {
    Poly f = random_poly(rng, deg_dist(rng), coeff_bound);
    if (f.degree() < 1 || !f.is_primitive()) continue;
    if (formsum::discriminant(f) == 0) continue;
    return f;
  }
}

inline BinaryForm random_form(std::mt19937_64& rng, unsigned degree, long long coeff_bound) {
  while (true) {
    std::vector<Integer> a(degree + 1);
    bool nonzero = false;
    for (auto& v : a) {
      v = random_int(rng, -coeff_bound, coeff_bound);
      if (v != 0) nonzero = true;
    }
    if (nonzero) return BinaryForm(std::move(a));
  }
}

inline BinaryForm random_squarefree_form(std::mt19937_64& rng, unsigned min_deg, unsigned max_deg,
                                         long long coeff_bound) {
  std::uniform_int_distribution<unsigned> deg_dist(min_deg, max_deg);
  while (true) {
    BinaryForm f = random_form(rng, deg_dist(rng), coeff_bound);
    if (formsum::disc_form(f) != 0) return f;
  }
}

// Primitive with nonzero discriminant; the shape core G inherits
// primitivity from F.
inline BinaryForm random_primitive_squarefree_form(std::mt19937_64& rng, unsigned min_deg,
                                                   unsigned max_deg, long long coeff_bound) {
  while (true) {
    BinaryForm f = random_squarefree_form(rng, min_deg, max_deg, coeff_bound);
    if (f.is_primitive()) return f;
  }
}

// ----- independent oracles -----

inline std::uint64_t divisor_count_brute(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  }
  return count;
}

inline std::uint64_t phi_brute(std::uint64_t m) {
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    if (std::gcd(k, m) == 1) ++count;
  }
  return count;
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Determinant by rational Gaussian elimination; an independent route from
// the fraction-free elimination used by the library.
inline Rational determinant_rational(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return det;
}

inline Rational resultant_oracle(const Poly& f, const Poly& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m <= 0 || n <= 0) throw std::invalid_argument("resultant_oracle: need positive degrees");
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j <= m; ++j) s[row][row + j] = Rational(f[static_cast<std::size_t>(m - j)]);
  }
  for (int row = 0; row < m; ++row) {
    for (int j = 0; j <= n; ++j) s[n + row][row + j] = Rational(g[static_cast<std::size_t>(n - j)]);
  }
  return determinant_rational(std::move(s));
}

inline Rational disc_oracle(const Poly& f) {
  const int d = f.degree();
  if (d <= 1) return 1;
  Rational res = resultant_oracle(f, f.derivative());
  res /= Rational(f.leading());
  if ((static_cast<unsigned>(d) * static_cast<unsigned>(d - 1) / 2) % 2 == 1) res = -res;
  return res;
}

}  // namespace testutil
