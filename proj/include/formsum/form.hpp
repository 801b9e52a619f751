#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formsum/integer.hpp"
#include "formsum/multiplicative.hpp"
#include "formsum/poly.hpp"

namespace formsum {

struct Mat2 {
  Integer a, b, c, d;  // [[a, b], [c, d]]
  Integer det() const { return a * d - b * c; }
};

// Binary integral form F(x1, x2) = sum_j coeff[j] * x1^(d-j) * x2^j of a
// fixed declared degree d.  Not identically zero.  Leading coefficients may
// vanish (forms divisible by x1 or x2 are legal).
class BinaryForm {
 public:
  explicit BinaryForm(std::vector<Integer> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw std::invalid_argument("BinaryForm: empty coefficient list");
    bool all_zero = true;
    for (const auto& v : a_) {
      if (v != 0) all_zero = false;
    }
    if (all_zero) throw std::invalid_argument("BinaryForm: identically zero");
  }

  // "d; a_0 a_1 ... a_d" with a_j the coefficient of x1^(d-j) x2^j.
  static BinaryForm from_string(const std::string& text) {
    const auto semi = text.find(';');
    if (semi == std::string::npos) {
      throw std::invalid_argument("BinaryForm::from_string: expected \"d; a_0 ... a_d\" in \"" + text + "\"");
    }
    unsigned d = 0;
    {
      std::istringstream head(text.substr(0, semi));
      if (!(head >> d)) throw std::invalid_argument("BinaryForm::from_string: bad degree in \"" + text + "\"");
      std::string extra;
      if (head >> extra) throw std::invalid_argument("BinaryForm::from_string: bad degree in \"" + text + "\"");
    }
    std::istringstream in(text.substr(semi + 1));
    std::vector<Integer> c;
    std::string tok;
    while (in >> tok) c.emplace_back(tok);
    if (c.size() != d + 1) {
      throw std::invalid_argument("BinaryForm::from_string: degree " + std::to_string(d) + " needs " +
                                  std::to_string(d + 1) + " coefficients, got " + std::to_string(c.size()));
    }
    return BinaryForm(std::move(c));
  }

  unsigned degree() const { return static_cast<unsigned>(a_.size() - 1); }
  const std::vector<Integer>& coeffs() const { return a_; }
  const Integer& coeff(unsigned j) const { return a_.at(j); }

  Integer eval(const Integer& x1, const Integer& x2) const {
    // Horner over j: after step j the accumulator equals the degree-j
    // prefix form, so r <- r * x1 + a_j * x2^j.
    Integer r = 0;
    Integer x2pow = 1;
    for (std::size_t j = 0; j < a_.size(); ++j) {
      r = r * x1 + a_[j] * x2pow;
      x2pow *= x2;
    }
    return r;
  }

  // F(x, 1)
  Poly dehomog_x() const {
    const unsigned d = degree();
    std::vector<Integer> c(d + 1, Integer(0));
    for (unsigned j = 0; j <= d; ++j) c[d - j] = a_[j];
    return Poly(std::move(c));
  }

  // F(1, x)
  Poly dehomog_y() const {
    std::vector<Integer> c(a_.begin(), a_.end());
    return Poly(std::move(c));
  }

  Integer norm() const {
    Integer m = 0;
    for (const auto& v : a_) m = std::max(m, Integer(boost::multiprecision::abs(v)));
    return m;
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& v : a_) g = boost::multiprecision::gcd(g, v);
    return g;
  }

  bool is_primitive() const { return content() == 1; }

  friend bool operator==(const BinaryForm& x, const BinaryForm& y) { return x.a_ == y.a_; }
  friend bool operator!=(const BinaryForm& x, const BinaryForm& y) { return !(x == y); }

  std::string to_string() const {
    std::string s = std::to_string(degree()) + ";";
    for (const auto& v : a_) s += " " + v.str();
    return s;
  }

 private:
  std::vector<Integer> a_;
};

// Homogenization of f to the declared degree: coefficient of x1^(n-j) x2^j
// is the x^(n-j) coefficient of f.  Requires n >= deg f.
inline BinaryForm homogenize(const Poly& f, unsigned n) {
  if (f.is_zero()) throw std::invalid_argument("homogenize: zero polynomial");
  if (static_cast<int>(n) < f.degree()) throw std::invalid_argument("homogenize: degree too small");
  std::vector<Integer> a(n + 1, Integer(0));
  for (unsigned j = 0; j <= n; ++j) a[j] = f[n - j];
  return BinaryForm(std::move(a));
}

// Coefficients of F(M x) computed exactly; the degree is preserved since
// det(M) != 0.
inline BinaryForm gl2_act(const BinaryForm& f, const Mat2& m) {
  if (m.det() == 0) throw std::invalid_argument("gl2_act: singular matrix");
  const unsigned d = f.degree();
  // (m.a x1 + m.b x2)^(d-j) * (m.c x1 + m.d x2)^j, accumulated over j.
  // pow_u[k] holds the x1^(k-i) x2^i coefficients of (a x1 + b x2)^k.
  auto linear_pow = [](const Integer& u, const Integer& v, unsigned k) {
    std::vector<Integer> r{Integer(1)};
    for (unsigned t = 0; t < k; ++t) {
      std::vector<Integer> next(r.size() + 1, Integer(0));
      for (std::size_t i = 0; i < r.size(); ++i) {
        next[i] += r[i] * u;
        next[i + 1] += r[i] * v;
      }
      r = std::move(next);
    }
    return r;
  };
  std::vector<Integer> out(d + 1, Integer(0));
  for (unsigned j = 0; j <= d; ++j) {
    if (f.coeff(j) == 0) continue;
    const auto first = linear_pow(m.a, m.b, d - j);
    const auto second = linear_pow(m.c, m.d, j);
    for (std::size_t s = 0; s < first.size(); ++s) {
      for (std::size_t t = 0; t < second.size(); ++t) {
        out[s + t] += f.coeff(j) * first[s] * second[t];
      }
    }
  }
  return BinaryForm(std::move(out));
}

// Discriminant of a binary form, resultant normalization: for a degree-d
// form with nonzero x1^d coefficient this equals the discriminant of the
// dehomogenization F(x, 1) taken at degree d.  A unimodular shear
// x2 -> x2 + t x1 (which leaves the discriminant invariant) first moves any
// root at infinity; t <= d always suffices.
inline Integer disc_form(const BinaryForm& f) {
  const unsigned d = f.degree();
  if (d == 0) return 1;
  unsigned t = 0;
  const Poly along_line = f.dehomog_y();  // F(1, y)
  while (along_line.eval(Integer(t)) == 0) {
    ++t;
    if (t > d + 1) throw std::logic_error("disc_form: no shear found (form should be zero)");
  }
  // g(x) = F(x, t x + 1) has degree exactly d with leading coefficient F(1, t).
  Poly g;
  if (t == 0) {
    g = f.dehomog_x();
  } else {
    const BinaryForm sheared = gl2_act(f, Mat2{Integer(1), Integer(0), Integer(t), Integer(1)});
    g = sheared.dehomog_x();
  }
  if (g.degree() != static_cast<int>(d)) throw std::logic_error("disc_form: shear failed");
  return discriminant(g);
}

// Discriminant of f viewed as a polynomial of declared degree as_degree
// (>= deg f); padding with zero leading coefficients corresponds to roots at
// infinity of the homogenization.
inline Integer disc_uni(const Poly& f, unsigned as_degree) {
  if (f.is_zero()) throw std::domain_error("disc_uni: zero polynomial");
  if (static_cast<int>(as_degree) < f.degree()) {
    throw std::invalid_argument("disc_uni: as_degree below actual degree");
  }
  if (static_cast<int>(as_degree) == f.degree()) return discriminant(f);
  return disc_form(homogenize(f, as_degree));
}

// F = x1^d1 * x2^d2 * G with d1, d2 in {0,1}, G(1,0) G(0,1) != 0 and
// disc(G) != 0.  Unique when disc(F) != 0.
struct ShapeDecomposition {
  unsigned d1 = 0;
  unsigned d2 = 0;
  BinaryForm g;
  unsigned degree;        // d, of the original form
  unsigned d_prime;       // d - d2
  unsigned d_doubleprime; // d - d1 - d2

  BinaryForm reassembled() const {
    std::vector<Integer> out(degree + 1, Integer(0));
    const auto& gc = g.coeffs();
    for (std::size_t i = 0; i < gc.size(); ++i) out[i + d2] = gc[i];
    return BinaryForm(std::move(out));
  }
};

inline ShapeDecomposition shape_decompose(const BinaryForm& f) {
  const Integer disc = disc_form(f);
  if (disc == 0) {
    // Name a repeated-factor witness in the diagnostic.
    unsigned t = 0;
    while (f.dehomog_y().eval(Integer(t)) == 0) ++t;
    const Poly g = t == 0 ? f.dehomog_x()
                          : gl2_act(f, Mat2{Integer(1), Integer(0), Integer(t), Integer(1)}).dehomog_x();
    const Poly w = gcd_primitive(g, g.derivative());
    throw std::domain_error("shape_decompose: disc(F) = 0; repeated factor witness (after shear by " +
                            std::to_string(t) + "): " + w.to_string());
  }
  const unsigned d = f.degree();
  const unsigned d2 = (f.coeff(0) == 0) ? 1u : 0u;        // x2 | F
  const unsigned d1 = (f.coeff(d) == 0) ? 1u : 0u;        // x1 | F
  std::vector<Integer> gc;
  for (unsigned j = d2; j <= d - d1; ++j) gc.push_back(f.coeff(j));
  ShapeDecomposition s{d1, d2, BinaryForm(std::move(gc)), d, d - d2, d - d1 - d2};
  if (s.g.coeff(0) == 0 || s.g.coeff(s.g.degree()) == 0) {
    throw std::logic_error("shape_decompose: repeated x1/x2 factor despite nonzero discriminant");
  }
  return s;
}

// psi(|disc F|), exact.
inline Rational delta_of_form(const BinaryForm& f) {
  const Integer disc = disc_form(f);
  if (disc == 0) throw std::domain_error("delta_of_form: disc(F) = 0");
  return psi(boost::multiprecision::abs(disc));
}

// The one-variable specialization x^d1 * G(x, n2) split into content q and
// primitive part f, so that q * f(x) = x^d1 * G(x, n2) identically.
struct Specialization {
  Poly f;     // primitive, degree d' = d - d2
  Integer q;  // the content gcd(a_0, a_1 n2, ..., a_d'' n2^d'')
};

inline Specialization specialize(const ShapeDecomposition& s, const Integer& n2) {
  if (n2 < 1) throw std::invalid_argument("specialize: n2 must be >= 1");
  if (!s.g.is_primitive()) throw std::invalid_argument("specialize: G must be primitive");
  const unsigned dd = s.d_doubleprime;
  std::vector<Integer> c(dd + 1, Integer(0));
  Integer pw = 1;
  for (unsigned j = 0; j <= dd; ++j) {
    c[dd - j] = s.g.coeff(j) * pw;  // coefficient of x^(d''-j)
    pw *= n2;
  }
  Poly raw = Poly(std::move(c)).shifted_up(s.d1);
  const Integer q = raw.content();
  return Specialization{raw.divided_by_integer(q), q};
}

}  // namespace formsum
