#pragma once

#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formsum/integer.hpp"
#include "formsum/primes.hpp"

namespace formsum {

// Recognized built-ins get integer fast paths in the sum kernels.
enum class MultKind { custom, tau, one, two_pow_omega };

// A sub-multiplicative function given by its values on prime powers.
// class_a is the A of the growth condition h(p^l) <= A^l; the (epsilon, B)
// pair is a witness only -- the full B(.) function is not representable and
// is not certified here.
struct MultFunc {
  std::string name;
  MultKind kind = MultKind::custom;
  std::function<Rational(const Integer& p, unsigned exp)> prime_power_rule;
  Rational class_a = 1;
  std::optional<Rational> epsilon_witness;
  std::optional<Rational> b_witness;
};

namespace expr {

// Tiny arithmetic expressions over the symbols p (the prime) and l (the
// exponent): integer literals, + - * /, unary minus, ^ with a non-negative
// integer right side, parentheses.  Enough to state closed-form prime-power
// rules in config files, e.g. "l + 1" or "(p - 1) * p^(l - 1) / p^l".
struct Node {
  enum class Op { constant, var_p, var_l, add, sub, mul, div, pow, neg };
  Op op;
  Rational value;  // constant
  std::unique_ptr<Node> lhs, rhs;
};

class Parser {
 public:
  explicit Parser(std::string text) : text_(std::move(text)) {}

  std::unique_ptr<Node> parse() {
    auto node = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("rule expression: " + why + " at offset " + std::to_string(pos_) +
                                " in \"" + text_ + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::unique_ptr<Node> parse_sum() {
    auto lhs = parse_product();
    while (true) {
      if (eat('+')) {
        auto n = std::make_unique<Node>();
        n->op = Node::Op::add;
        n->lhs = std::move(lhs);
        n->rhs = parse_product();
        lhs = std::move(n);
      } else if (eat('-')) {
        auto n = std::make_unique<Node>();
        n->op = Node::Op::sub;
        n->lhs = std::move(lhs);
        n->rhs = parse_product();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_product() {
    auto lhs = parse_unary();
    while (true) {
      if (eat('*')) {
        auto n = std::make_unique<Node>();
        n->op = Node::Op::mul;
        n->lhs = std::move(lhs);
        n->rhs = parse_unary();
        lhs = std::move(n);
      } else if (eat('/')) {
        auto n = std::make_unique<Node>();
        n->op = Node::Op::div;
        n->lhs = std::move(lhs);
        n->rhs = parse_unary();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_unary() {
    if (eat('-')) {
      auto n = std::make_unique<Node>();
      n->op = Node::Op::neg;
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  std::unique_ptr<Node> parse_power() {
    auto base = parse_atom();
    if (eat('^')) {
      auto n = std::make_unique<Node>();
      n->op = Node::Op::pow;
      n->lhs = std::move(base);
      n->rhs = parse_unary();  // right associative
      return n;
    }
    return base;
  }

  std::unique_ptr<Node> parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (c == 'p' || c == 'l') {
      ++pos_;
      auto n = std::make_unique<Node>();
      n->op = (c == 'p') ? Node::Op::var_p : Node::Op::var_l;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto n = std::make_unique<Node>();
      n->op = Node::Op::constant;
      n->value = Rational(Integer(text_.substr(start, pos_ - start)));
      return n;
    }
    fail("unexpected character");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

inline Rational eval(const Node& node, const Rational& p, const Rational& l) {
  switch (node.op) {
    case Node::Op::constant:
      return node.value;
    case Node::Op::var_p:
      return p;
    case Node::Op::var_l:
      return l;
    case Node::Op::add:
      return eval(*node.lhs, p, l) + eval(*node.rhs, p, l);
    case Node::Op::sub:
      return eval(*node.lhs, p, l) - eval(*node.rhs, p, l);
    case Node::Op::mul:
      return eval(*node.lhs, p, l) * eval(*node.rhs, p, l);
    case Node::Op::div: {
      const Rational d = eval(*node.rhs, p, l);
      if (d == 0) throw std::domain_error("rule expression: division by zero");
      return eval(*node.lhs, p, l) / d;
    }
    case Node::Op::neg:
      return -eval(*node.lhs, p, l);
    case Node::Op::pow: {
      const Rational e = eval(*node.rhs, p, l);
      if (boost::multiprecision::denominator(e) != 1 || e < 0) {
        throw std::domain_error("rule expression: exponent must be a non-negative integer");
      }
      return rpow(eval(*node.lhs, p, l), boost::multiprecision::numerator(e).convert_to<unsigned>());
    }
  }
  throw std::logic_error("rule expression: bad node");
}

}  // namespace expr

inline MultFunc mf_tau() {
  MultFunc h;
  h.name = "tau";
  h.kind = MultKind::tau;
  h.prime_power_rule = [](const Integer&, unsigned e) { return Rational(e + 1); };
  h.class_a = 2;
  return h;
}

inline MultFunc mf_one() {
  MultFunc h;
  h.name = "one";
  h.kind = MultKind::one;
  h.prime_power_rule = [](const Integer&, unsigned) { return Rational(1); };
  h.class_a = 1;
  return h;
}

inline MultFunc mf_two_pow_omega() {
  MultFunc h;
  h.name = "two_pow_omega";
  h.kind = MultKind::two_pow_omega;
  h.prime_power_rule = [](const Integer&, unsigned) { return Rational(2); };
  h.class_a = 2;
  return h;
}

// name: a built-in identifier, or any label when an explicit rule is given.
inline MultFunc make_mult_func(const std::string& name, const std::string& rule_expr = "",
                               Rational class_a = 0) {
  if (rule_expr.empty()) {
    if (name == "tau") return mf_tau();
    if (name == "one") return mf_one();
    if (name == "two_pow_omega") return mf_two_pow_omega();
    throw std::invalid_argument("unknown multiplicative function \"" + name +
                                "\" (built-ins: tau, one, two_pow_omega)");
  }
  auto root = std::make_shared<std::unique_ptr<expr::Node>>(expr::Parser(rule_expr).parse());
  MultFunc h;
  h.name = name;
  h.kind = MultKind::custom;
  h.prime_power_rule = [root](const Integer& p, unsigned e) {
    const Rational v = expr::eval(**root, Rational(p), Rational(e));
    if (v < 0) throw std::domain_error("prime-power rule produced a negative value");
    return v;
  };
  h.class_a = class_a;
  return h;
}

// h(n) as the product of prime-power values over the factorization of n.
inline Rational eval_mult(const MultFunc& h, const FactoredInteger& n) {
  Rational r = 1;
  for (const auto& [p, e] : n.factors) r *= h.prime_power_rule(p, e);
  return r;
}

inline Rational eval_mult(const MultFunc& h, const Integer& n) {
  if (n < 1) throw std::invalid_argument("eval_mult: h is undefined at 0");
  return eval_mult(h, factorize(n));
}

inline Integer euler_phi(const Integer& m) {
  if (m < 1) throw std::invalid_argument("euler_phi: m must be >= 1");
  Integer r = 1;
  for (const auto& [p, e] : factorize(m).factors) r *= ipow(p, e - 1) * (p - 1);
  return r;
}

// psi(n) = prod over distinct p | n of (1 + 1/p), exact.
inline Rational psi(const Integer& n) {
  if (n < 1) throw std::invalid_argument("psi: n must be >= 1");
  Rational r = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    (void)e;
    r *= Rational(p + 1, p);
  }
  return r;
}

struct ClassMembershipViolation {
  Integer prime;
  unsigned exponent;
  Rational value;  // h(p^exponent)
  Rational bound;  // A^exponent
};

struct ClassMembershipReport {
  Rational a;
  Integer bound;
  std::vector<ClassMembershipViolation> violations;
  // Finite certification only: the growth condition is checked on prime
  // powers up to `bound`; the n^epsilon condition is not decidable from any
  // finite sample and is not claimed.
  std::string note;
  bool ok() const { return violations.empty(); }
};

inline ClassMembershipReport check_class_membership(const MultFunc& h, const Rational& a,
                                                    const Integer& bound) {
  if (bound < 2) throw std::invalid_argument("check_class_membership: bound must be >= 2");
  ClassMembershipReport report;
  report.a = a;
  report.bound = bound;
  report.note =
      "A-condition h(p^l) <= A^l checked exhaustively on prime powers <= bound; "
      "the B(epsilon) condition is not certifiable by finite computation";
  const std::uint64_t limit = to_u64(bound);
  if (limit > default_sieve().limit()) {
    throw std::out_of_range("check_class_membership: bound beyond sieve limit");
  }
  for (std::uint32_t p : default_sieve().primes()) {
    if (p > limit) break;
    Rational abound = a;
    Integer pe = p;
    unsigned e = 1;
    while (true) {
      const Rational v = h.prime_power_rule(Integer(p), e);
      if (v > abound) report.violations.push_back({Integer(p), e, v, abound});
      if (pe > limit / p) break;
      pe *= p;
      if (pe > limit) break;
      ++e;
      abound *= a;
    }
  }
  return report;
}

}  // namespace formsum
