#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formsum/integer.hpp"

namespace formsum {

// Dense integer polynomial, coefficients stored by ascending power with no
// trailing zeros.  Values are immutable after construction.
class Poly {
 public:
  Poly() = default;

  explicit Poly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { normalize(); }

  Poly(std::initializer_list<Integer> coeffs) : c_(coeffs) { normalize(); }

  static Poly constant(Integer v) { return Poly(std::vector<Integer>{std::move(v)}); }

  static Poly monomial(unsigned deg, Integer coeff = 1) {
    std::vector<Integer> c(deg + 1, Integer(0));
    c[deg] = std::move(coeff);
    return Poly(std::move(c));
  }

  // Whitespace-separated ascending coefficients: "1 0 1" is x^2 + 1.
  static Poly from_string(const std::string& text) {
    std::istringstream in(text);
    std::vector<Integer> c;
    std::string tok;
    while (in >> tok) c.emplace_back(tok);
    if (c.empty()) throw std::invalid_argument("Poly::from_string: no coefficients in \"" + text + "\"");
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return c_; }

  const Integer& operator[](std::size_t i) const {
    static const Integer zero = 0;
    return i < c_.size() ? c_[i] : zero;
  }

  const Integer& leading() const {
    if (c_.empty()) throw std::domain_error("Poly::leading: zero polynomial");
    return c_.back();
  }

  Integer eval(const Integer& x) const {
    Integer r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Integer> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Integer(i);
    return Poly(std::move(d));
  }

  // f(a*x + b) by Horner over the coefficient list.
  Poly compose_affine(const Integer& a, const Integer& b) const {
    Poly r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      r = r.mul_linear(a, b);
      r = r + Poly::constant(*it);
    }
    return r;
  }

  // x^k * f
  Poly shifted_up(unsigned k) const {
    if (is_zero() || k == 0) return k == 0 ? *this : Poly();
    std::vector<Integer> c(c_.size() + k, Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
    return Poly(std::move(c));
  }

  // gcd of coefficients, non-negative; 0 only for the zero polynomial.
  Integer content() const {
    Integer g = 0;
    for (const auto& v : c_) g = boost::multiprecision::gcd(g, v);
    return g;
  }

  bool is_primitive() const { return content() == 1; }

  Poly primitive_part() const {
    if (is_zero()) throw std::domain_error("Poly::primitive_part: zero polynomial");
    return divided_by_integer(content());
  }

  Poly divided_by_integer(const Integer& d) const {
    if (d == 0) throw std::invalid_argument("Poly: division by zero");
    std::vector<Integer> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] % d != 0) throw std::domain_error("Poly: inexact integer division");
      c[i] = c_[i] / d;
    }
    return Poly(std::move(c));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }

  friend Poly operator*(const Integer& s, const Poly& a) {
    std::vector<Integer> c(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = s * a.c_[i];
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Integer max_abs_coeff() const {
    Integer m = 0;
    for (const auto& v : c_) m = std::max(m, Integer(boost::multiprecision::abs(v)));
    return m;
  }

  std::string to_coeff_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ' ';
      s += c_[i].str();
    }
    return s;
  }

  // Human-readable form for diagnostics, e.g. "4x^3 - x".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Integer& v = c_[k];
      if (v == 0) continue;
      const Integer a = boost::multiprecision::abs(v);
      if (s.empty()) {
        if (v < 0) s += "-";
      } else {
        s += (v < 0) ? " - " : " + ";
      }
      if (a != 1 || k == 0) s += a.str();
      if (k >= 1) {
        s += "x";
        if (k >= 2) s += "^" + std::to_string(k);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  Poly mul_linear(const Integer& a, const Integer& b) const {
    // this * (a x + b)
    if (is_zero()) return Poly();
    std::vector<Integer> c(c_.size() + 1, Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      c[i + 1] += c_[i] * a;
      c[i] += c_[i] * b;
    }
    return Poly(std::move(c));
  }

  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Integer> c_;
};

// Determinant by fraction-free (Bareiss) elimination; exact over Integer.
inline Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Resultant of f and g via the Sylvester matrix.  Res(f, g) = g^deg(f) for
// constant nonzero g; 0 when either is zero (and the other nonconstant).
inline Integer resultant(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) {
    if (f.is_zero() && g.degree() == 0) return 1;  // empty-degree convention
    if (g.is_zero() && f.degree() == 0) return 1;
    return 0;
  }
  const int m = f.degree();
  const int n = g.degree();
  if (m == 0) return ipow(f.leading(), static_cast<unsigned>(n));
  if (n == 0) return ipow(g.leading(), static_cast<unsigned>(m));
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, Integer(0)));
  // n rows of f's coefficients (descending), then m rows of g's.
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j <= m; ++j) s[row][row + j] = f[static_cast<std::size_t>(m - j)];
  }
  for (int row = 0; row < m; ++row) {
    for (int j = 0; j <= n; ++j) s[n + row][row + j] = g[static_cast<std::size_t>(n - j)];
  }
  return determinant(std::move(s));
}

// Discriminant of f at its own degree d:
//   disc(f) = (-1)^{d(d-1)/2} * Res(f, f') / lc(f).
// Zero exactly when f has a repeated root.
inline Integer discriminant(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("discriminant: zero polynomial");
  const int d = f.degree();
  if (d <= 1) return 1;
  const Integer res = resultant(f, f.derivative());
  Integer disc = res / f.leading();
  if (disc * f.leading() != res) throw std::logic_error("discriminant: inexact division");
  if ((static_cast<unsigned>(d) * static_cast<unsigned>(d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

// Primitive gcd over Z via a pseudo-remainder sequence with content
// stripping at each step.  Result is primitive with positive leading
// coefficient (or the zero polynomial when both inputs are zero).
inline Poly gcd_primitive(Poly a, Poly b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  a = a.primitive_part();
  b = b.primitive_part();
  while (!b.is_zero()) {
    if (a.degree() < b.degree()) std::swap(a, b);
    // pseudo-remainder of lc(b)^(deg a - deg b + 1) * a by b
    Poly r = ipow(b.leading(), static_cast<unsigned>(a.degree() - b.degree() + 1)) * a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const Integer q = r.leading() / b.leading();
      if (q * b.leading() != r.leading()) throw std::logic_error("gcd_primitive: pseudo division failed");
      r = r - q * (b * Poly::monomial(static_cast<unsigned>(r.degree() - b.degree())));
    }
    a = b;
    b = r.is_zero() ? Poly() : r.primitive_part();
  }
  if (a.leading() < 0) a = Integer(-1) * a;
  return a;
}

}  // namespace formsum
