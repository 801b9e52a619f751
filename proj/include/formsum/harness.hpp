#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "formsum/form.hpp"
#include "formsum/integer.hpp"
#include "formsum/multiplicative.hpp"
#include "formsum/sums.hpp"

namespace formsum {

inline std::string decimal_sig_digits(const Decimal& v, unsigned digits) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

struct RatioRow {
  std::uint64_t x1 = 0;
  std::uint64_t x2 = 0;
  Rational sum = 0;
  std::uint64_t zeros_skipped = 0;
  Rational euler = 0;                 // E at this grid point (1 when unused)
  std::optional<Rational> ratio;      // exact ratio when the law is rational
  std::optional<std::string> ratio_decimal;  // approximate law (marked in reports)
};

struct BoundednessReport {
  std::vector<RatioRow> rows;
  Rational delta = 0;        // psi(|disc F|), when a form is involved
  Rational threshold = 2;    // configured spread bound, not a paper constant
  bool spread_ok = false;
  // max/min of the ratio sequence; exact when the ratios are exact.
  std::optional<Rational> spread;
  std::optional<std::string> spread_decimal;
};

// Ratio sequence S(X, X; h, F) / (X^2 E(X, X)) over the grid, with the
// max-to-min spread compared against the configured threshold.  The bound
// constant itself is non-effective, so boundedness is checked as spread
// stability across a growing grid.
inline BoundednessReport theorem1_harness(const BinaryForm& f, const MultFunc& h,
                                          const std::vector<std::uint64_t>& grid,
                                          const Rational& threshold = 2, unsigned jobs = 0) {
  if (grid.empty()) throw std::invalid_argument("theorem1_harness: empty grid");
  if (!f.is_primitive()) throw std::invalid_argument("theorem1_harness: form must be primitive");
  const ShapeDecomposition shape = shape_decompose(f);
  BoundednessReport rep;
  rep.threshold = threshold;
  rep.delta = delta_of_form(f);
  for (std::uint64_t x : grid) {
    RatioRow row;
    row.x1 = row.x2 = x;
    const SumValue s = s_sum(x, x, h, f, jobs);
    row.sum = s.sum;
    row.zeros_skipped = s.zeros_skipped;
    row.euler = euler_product(shape, h, x, x);
    if (row.euler == 0 || x == 0) throw std::logic_error("theorem1_harness: degenerate denominator");
    row.ratio = s.sum / (Rational(Integer(x) * Integer(x)) * row.euler);
    rep.rows.push_back(std::move(row));
  }
  Rational lo = *rep.rows.front().ratio, hi = lo;
  for (const auto& row : rep.rows) {
    lo = std::min(lo, *row.ratio);
    hi = std::max(hi, *row.ratio);
  }
  if (lo <= 0) throw std::logic_error("theorem1_harness: nonpositive ratio");
  rep.spread = hi / lo;
  rep.spread_ok = *rep.spread < threshold;
  return rep;
}

// Ratio sequence S(X, X; tau, F) / (X^2 ln X).  The logarithm leaves exact
// arithmetic: ratios are 50-digit decimals, reported to 10 significant
// digits, and rows are flagged approximate in the CSV output.
// Irreducibility of F is a caller assertion recorded in the report, not a
// certified fact.
inline BoundednessReport corollary2_harness(const BinaryForm& f,
                                            const std::vector<std::uint64_t>& grid,
                                            const Rational& threshold = 2, unsigned jobs = 0) {
  if (grid.empty()) throw std::invalid_argument("corollary2_harness: empty grid");
  const MultFunc tau = mf_tau();
  BoundednessReport rep;
  rep.threshold = threshold;
  rep.delta = delta_of_form(f);
  Decimal lo = 0, hi = 0;
  bool first = true;
  for (std::uint64_t x : grid) {
    if (x < 2) throw std::invalid_argument("corollary2_harness: grid points must be >= 2");
    RatioRow row;
    row.x1 = row.x2 = x;
    const SumValue s = s_sum(x, x, tau, f, jobs);
    row.sum = s.sum;
    row.zeros_skipped = s.zeros_skipped;
    row.euler = 1;
    const Decimal denom = Decimal(Integer(x) * Integer(x)) * boost::multiprecision::log(Decimal(x));
    const Decimal ratio = Decimal(s.sum) / denom;
    row.ratio_decimal = decimal_sig_digits(ratio, 10);
    rep.rows.push_back(std::move(row));
    if (first || ratio < lo) lo = ratio;
    if (first || ratio > hi) hi = ratio;
    first = false;
  }
  const Decimal spread = hi / lo;
  rep.spread_decimal = decimal_sig_digits(spread, 10);
  rep.spread_ok = spread < Decimal(threshold);
  return rep;
}

// Ratio sequence T(X; h, f) / nair_rhs(X; h, f), exact.
inline BoundednessReport theorem3_harness(const Poly& f, const MultFunc& h,
                                          const std::vector<std::uint64_t>& grid,
                                          const Rational& threshold = 2, unsigned jobs = 0) {
  if (grid.empty()) throw std::invalid_argument("theorem3_harness: empty grid");
  BoundednessReport rep;
  rep.threshold = threshold;
  for (std::uint64_t x : grid) {
    RatioRow row;
    row.x1 = x;
    row.x2 = 0;
    const SumValue t = t_sum(x, h, f, jobs);
    row.sum = t.sum;
    row.zeros_skipped = t.zeros_skipped;
    const Rational rhs = nair_rhs(x, h, f);
    if (rhs <= 0) throw std::logic_error("theorem3_harness: nonpositive right-hand side");
    row.euler = rhs;  // reported in the E column slot
    row.ratio = t.sum / rhs;
    rep.rows.push_back(std::move(row));
  }
  Rational lo = *rep.rows.front().ratio, hi = lo;
  for (const auto& row : rep.rows) {
    lo = std::min(lo, *row.ratio);
    hi = std::max(hi, *row.ratio);
  }
  if (lo <= 0) throw std::logic_error("theorem3_harness: nonpositive ratio");
  rep.spread = hi / lo;
  rep.spread_ok = *rep.spread < threshold;
  return rep;
}

// Exact check of the specialization inequality
//   S(X1, X2; h, F) <= sum_{n2 <= X2} h(n2^d2 q_{n2}) T(X1; h, f_{n2})
// for sub-multiplicative h.
struct SpecializationInequality {
  Rational lhs = 0;
  Rational rhs = 0;
  bool holds = false;
};

inline SpecializationInequality check_specialization_inequality(const BinaryForm& f, const MultFunc& h,
                                                                std::uint64_t x1, std::uint64_t x2,
                                                                unsigned jobs = 0) {
  const ShapeDecomposition shape = shape_decompose(f);
  SpecializationInequality out;
  out.lhs = s_sum(x1, x2, h, f, jobs).sum;
  for (std::uint64_t n2 = 1; n2 <= x2; ++n2) {
    const Specialization sp = specialize(shape, Integer(n2));
    const Integer weight_arg = ipow(Integer(n2), shape.d2) * sp.q;
    out.rhs += eval_mult(h, weight_arg) * t_sum(x1, h, sp.f, jobs).sum;
  }
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace formsum
