#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "formsum/integer.hpp"
#include "formsum/poly.hpp"
#include "formsum/primes.hpp"
#include "formsum/roots.hpp"

namespace formsum {

// p is a fixed prime divisor of f when p | f(n) for every integer n;
// equivalent to vanishing on the p residues 0..p-1.
inline bool has_fixed_prime_divisor(const Poly& f, std::uint64_t p) {
  if (f.is_zero()) return true;
  const auto c = detail::coeffs_mod(f, p);
  for (std::uint64_t n = 0; n < p; ++n) {
    if (detail::horner_mod(c, n, p) != 0) return false;
  }
  return true;
}

// All fixed prime divisors of a primitive polynomial; they cannot exceed
// deg f, since f has at most deg f roots modulo p.
inline std::vector<std::uint64_t> fixed_prime_divisors(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("fixed_prime_divisors: zero polynomial");
  if (!f.is_primitive()) {
    throw std::invalid_argument("fixed_prime_divisors: polynomial must be primitive (content " +
                                f.content().str() + ")");
  }
  std::vector<std::uint64_t> out;
  const int d = f.degree();
  if (d < 1) return out;
  for (std::uint32_t p : default_sieve().primes()) {
    if (static_cast<int>(p) > d) break;
    if (has_fixed_prime_divisor(f, p)) out.push_back(p);
  }
  return out;
}

// f = (x^p - x) q + p r with q's coefficients in [0, p) and q's leading
// coefficient nonzero; e = deg q.
struct PqrDecomposition {
  std::uint64_t p;
  Poly q;
  Poly r;
  unsigned e;
};

inline PqrDecomposition pqr_decompose(const Poly& f, std::uint64_t p) {
  if (f.is_zero()) throw std::invalid_argument("pqr_decompose: zero polynomial");
  if (!f.is_primitive()) throw std::invalid_argument("pqr_decompose: f must be primitive");
  if (!has_fixed_prime_divisor(f, p)) {
    throw std::invalid_argument("pqr_decompose: " + std::to_string(p) + " is not a fixed prime divisor of " +
                                f.to_string());
  }
  // Long division of f mod p by the monic x^p - x over the p-element field.
  auto fm = detail::coeffs_mod(f, p);
  while (!fm.empty() && fm.back() == 0) fm.pop_back();
  // f vanishes identically on the field, so x^p - x divides f mod p and in
  // particular deg(f mod p) >= p.
  if (fm.size() < p + 1) throw std::logic_error("pqr_decompose: f mod p too small despite fpd");
  std::vector<std::uint64_t> quot(fm.size() - p, 0);
  for (std::size_t i = fm.size(); i-- > p;) {
    const std::uint64_t c = fm[i] % p;
    if (c == 0) continue;
    quot[i - p] = c;
    // subtract c * x^(i-p) * (x^p - x)
    fm[i] = 0;
    fm[i - p + 1] = (fm[i - p + 1] + c) % p;
  }
  for (std::size_t i = 0; i < p && i < fm.size(); ++i) {
    if (fm[i] % p != 0) throw std::logic_error("pqr_decompose: nonzero remainder despite fpd");
  }
  std::vector<Integer> qc(quot.size());
  for (std::size_t i = 0; i < quot.size(); ++i) qc[i] = quot[i];
  Poly q{std::move(qc)};
  const Poly xpx = Poly::monomial(static_cast<unsigned>(p)) - Poly::monomial(1);
  const Poly pr = Poly(f) - xpx * q;
  const Poly r = pr.divided_by_integer(p);
  if (q.is_zero()) throw std::logic_error("pqr_decompose: zero quotient");
  return PqrDecomposition{p, q, r, static_cast<unsigned>(q.degree())};
}

// One substitution step x -> p x + k: strips the guaranteed power of p and
// returns (nu, f_k) with f_k = f(p x + k) / p^(nu + 1) primitive.
inline std::pair<unsigned, Poly> reduce_once(const Poly& f, std::uint64_t p, std::uint64_t k) {
  if (k >= p) throw std::invalid_argument("reduce_once: k must lie in [0, p)");
  if (!f.is_primitive()) throw std::invalid_argument("reduce_once: f must be primitive");
  if (!has_fixed_prime_divisor(f, p)) {
    throw std::invalid_argument("reduce_once: " + std::to_string(p) + " is not a fixed prime divisor");
  }
  const Poly g = f.compose_affine(Integer(p), Integer(k));
  const Integer content = g.content();
  const unsigned v = valuation(content, Integer(p));
  if (v == 0) throw std::logic_error("reduce_once: content not divisible by p");
  if (content != ipow(Integer(p), v)) {
    // For primitive f the content of f(p x + k) is a pure power of p.
    throw std::logic_error("reduce_once: content has a factor coprime to p");
  }
  return {v - 1, g.divided_by_integer(content)};
}

// One root-to-leaf chain of the substitution tree: digits (k_0, ..., k_delta)
// encode x -> p^(delta+1) x + sum_i p^i k_i, and mus records the power of p
// extracted at each step, so that
//   p^(mu_0 + ... + mu_delta) * result(x) = f(p^(delta+1) x + sum p^i k_i).
struct ReductionBranch {
  std::vector<unsigned> digits;
  std::vector<unsigned> mus;
  Poly result;

  unsigned delta() const { return static_cast<unsigned>(digits.size()) - 1; }
  unsigned mu_sum() const { return std::accumulate(mus.begin(), mus.end(), 0u); }
  Integer shift(std::uint64_t p) const {
    Integer s = 0;
    Integer pw = 1;
    for (unsigned k : digits) {
      s += pw * k;
      pw *= p;
    }
    return s;
  }
};

struct ReductionCertificate {
  Poly f;
  std::uint64_t p;
  unsigned e;  // degree of the quotient in the p-division of f
  std::vector<ReductionBranch> branches;  // lexicographic by digit string
};

namespace detail {

inline void explore_branches(const Poly& cur, std::uint64_t p, unsigned degree_cap,
                             std::vector<unsigned>& digits, std::vector<unsigned>& mus,
                             std::vector<ReductionBranch>& out) {
  if (digits.size() > static_cast<std::size_t>(degree_cap) * degree_cap) {
    throw std::logic_error("reduce_full: recursion deeper than d^2; aborting");
  }
  for (std::uint64_t k = 0; k < p; ++k) {
    const auto [nu, next] = reduce_once(cur, p, k);
    digits.push_back(static_cast<unsigned>(k));
    mus.push_back(nu + 1);
    if (has_fixed_prime_divisor(next, p)) {
      explore_branches(next, p, degree_cap, digits, mus, out);
    } else {
      out.push_back(ReductionBranch{digits, mus, next});
    }
    digits.pop_back();
    mus.pop_back();
  }
}

}  // namespace detail

// Full removal of the fixed prime divisor p: explores every digit path,
// recursing while the reduced polynomial still has p as a fixed divisor.
// disc(f) != 0 guarantees termination (the discriminant survives every
// affine substitution, and the quotient degree strictly drops).
inline ReductionCertificate reduce_full(const Poly& f, std::uint64_t p) {
  if (discriminant(f) == 0) {
    throw std::domain_error("reduce_full: disc(f) = 0");
  }
  const PqrDecomposition pqr = pqr_decompose(f, p);  // validates primitivity and the fpd
  ReductionCertificate cert;
  cert.f = f;
  cert.p = p;
  cert.e = pqr.e;
  std::vector<unsigned> digits, mus;
  detail::explore_branches(f, p, static_cast<unsigned>(f.degree()), digits, mus, cert.branches);
  const unsigned budget = (pqr.e + 1) * (pqr.e + 1);
  for (const auto& b : cert.branches) {
    if (b.delta() > pqr.e || b.mu_sum() > budget) {
      throw std::logic_error("reduce_full: branch exceeded the (e+1)^2 budget");
    }
  }
  return cert;
}

// Per-prime digit data attached to a leaf; empty digits mean the leaf
// passed through this prime unchanged (it never had it as a fixed divisor).
struct LeafPath {
  std::uint64_t prime;
  std::vector<unsigned> digits;
  std::vector<unsigned> mus;
};

// Leaf progression: on {modulus * Z + residue} the original polynomial
// factors as f(modulus * x + residue) = gamma * g(x).
struct CertificateLeaf {
  Integer modulus;   // alpha
  Integer residue;   // beta in [0, alpha)
  Integer gamma;
  Poly g;
  std::vector<LeafPath> path;  // one entry per certificate prime, in order
};

struct MultiPrimeCertificate {
  Poly f;
  std::vector<std::uint64_t> primes;  // increasing
  std::vector<CertificateLeaf> leaves;
};

// Removes every fixed prime divisor of f by composing single-prime
// reductions in increasing prime order.  Substitutions with modulus coprime
// to q reach a full residue system mod q, so stages for later primes never
// reintroduce earlier ones.
inline MultiPrimeCertificate remove_all_fpd(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("remove_all_fpd: zero polynomial");
  if (!f.is_primitive()) throw std::invalid_argument("remove_all_fpd: f must be primitive");
  if (discriminant(f) == 0) throw std::domain_error("remove_all_fpd: disc(f) = 0");
  MultiPrimeCertificate cert;
  cert.f = f;
  cert.primes = fixed_prime_divisors(f);
  cert.leaves = {CertificateLeaf{Integer(1), Integer(0), Integer(1), f, {}}};
  const unsigned d = static_cast<unsigned>(f.degree());
  for (std::uint64_t p : cert.primes) {
    std::vector<CertificateLeaf> next;
    for (const auto& leaf : cert.leaves) {
      if (!has_fixed_prime_divisor(leaf.g, p)) {
        CertificateLeaf pass = leaf;
        pass.path.push_back(LeafPath{p, {}, {}});
        next.push_back(std::move(pass));
        continue;
      }
      const ReductionCertificate stage = reduce_full(leaf.g, p);
      for (const auto& b : stage.branches) {
        if (b.delta() + 1 > d - 1 || b.mu_sum() > d * d) {
          throw std::logic_error("remove_all_fpd: stage exceeded the degree-based size bounds");
        }
        CertificateLeaf nl;
        nl.modulus = leaf.modulus * ipow(Integer(p), b.delta() + 1);
        nl.residue = leaf.residue + leaf.modulus * b.shift(p);
        nl.gamma = leaf.gamma * ipow(Integer(p), b.mu_sum());
        nl.g = b.result;
        nl.path = leaf.path;
        nl.path.push_back(LeafPath{p, b.digits, b.mus});
        next.push_back(std::move(nl));
      }
    }
    cert.leaves = std::move(next);
  }
  return cert;
}

struct VerificationReport {
  bool identity_ok = true;        // (i)  gamma * g(x) = f(alpha x + beta) per leaf
  bool partition_ok = true;       // (ii) progressions exactly cover Z
  bool fpd_free_ok = true;        // (iii) leaves primitive and free of small fpds
  bool budget_ok = true;          // (iv) digit/mu data consistent and within budgets
  bool disc_relation_ok = true;   // (v)  gamma^(2d-2) disc(g) = alpha^(d(d-1)) disc(f)
  std::vector<std::string> failures;

  bool pass() const {
    return identity_ok && partition_ok && fpd_free_ok && budget_ok && disc_relation_ok;
  }
};

// Recomputes every claim of a stored certificate from scratch; shares no
// state with the producer.
inline VerificationReport verify_certificate(const MultiPrimeCertificate& cert) {
  VerificationReport rep;
  auto fail = [&rep](bool& flag, const std::string& msg) {
    flag = false;
    rep.failures.push_back(msg);
  };

  if (cert.f.is_zero()) {
    fail(rep.identity_ok, "base polynomial is zero");
    return rep;
  }
  const unsigned d = static_cast<unsigned>(cert.f.degree());
  const Integer disc_f = discriminant(cert.f);

  // (i) leaf identities, plus degree preservation.
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    const auto& leaf = cert.leaves[i];
    if (leaf.modulus < 1 || leaf.residue < 0 || leaf.residue >= leaf.modulus) {
      fail(rep.identity_ok, "leaf " + std::to_string(i) + ": residue out of range");
      continue;
    }
    const Poly lhs = leaf.gamma * leaf.g;
    const Poly rhs = cert.f.compose_affine(leaf.modulus, leaf.residue);
    if (lhs != rhs) {
      fail(rep.identity_ok, "leaf " + std::to_string(i) + ": gamma*g != f(alpha x + beta)");
    }
    if (leaf.g.degree() != static_cast<int>(d)) {
      fail(rep.identity_ok, "leaf " + std::to_string(i) + ": degree not preserved");
    }
  }

  // (ii) the progressions partition the integers: densities sum to one and
  // no two leaves meet (b1 = b2 mod gcd(a1, a2) would give an intersection).
  {
    Rational density = 0;
    for (const auto& leaf : cert.leaves) density += Rational(Integer(1), leaf.modulus);
    if (density != 1) fail(rep.partition_ok, "leaf densities sum to " + to_string_exact(density));
    for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
      for (std::size_t j = i + 1; j < cert.leaves.size(); ++j) {
        const Integer g = boost::multiprecision::gcd(cert.leaves[i].modulus, cert.leaves[j].modulus);
        if ((cert.leaves[i].residue - cert.leaves[j].residue) % g == 0) {
          fail(rep.partition_ok,
               "leaves " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
      }
    }
  }

  // (iii) each leaf polynomial is primitive and has no fixed prime divisor
  // at any prime up to max(certificate primes, deg g); beyond deg g a
  // primitive polynomial cannot have one, so this certifies membership in
  // the fully fpd-free class.
  {
    std::uint64_t pmax = cert.primes.empty() ? 0 : cert.primes.back();
    pmax = std::max<std::uint64_t>(pmax, d);
    for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
      const auto& leaf = cert.leaves[i];
      if (leaf.g.is_zero() || !leaf.g.is_primitive()) {
        fail(rep.fpd_free_ok, "leaf " + std::to_string(i) + ": g is not primitive");
        continue;
      }
      for (std::uint32_t q : default_sieve().primes()) {
        if (q > pmax) break;
        if (has_fixed_prime_divisor(leaf.g, q)) {
          fail(rep.fpd_free_ok,
               "leaf " + std::to_string(i) + ": g still has fixed prime divisor " + std::to_string(q));
        }
      }
    }
  }

  // (iv) walk every leaf path, recomputing the substitution chain: digit
  // bounds, exact p-power extraction at each step, and the delta <= e,
  // sum(mu) <= (e+1)^2 budgets against the freshly recomputed quotient
  // degree at each stage.
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    const auto& leaf = cert.leaves[i];
    const std::string where = "leaf " + std::to_string(i);
    if (leaf.path.size() != cert.primes.size()) {
      fail(rep.budget_ok, where + ": path length disagrees with prime list");
      continue;
    }
    Poly cur = cert.f;
    bool chain_ok = true;
    for (std::size_t s = 0; s < leaf.path.size() && chain_ok; ++s) {
      const auto& stage = leaf.path[s];
      if (stage.prime != cert.primes[s]) {
        fail(rep.budget_ok, where + ": stage prime mismatch");
        chain_ok = false;
        break;
      }
      if (stage.digits.empty()) {
        if (!stage.mus.empty()) {
          fail(rep.budget_ok, where + ": pass-through stage carries mu data");
          chain_ok = false;
        }
        continue;
      }
      if (stage.digits.size() != stage.mus.size()) {
        fail(rep.budget_ok, where + ": digit/mu length mismatch");
        chain_ok = false;
        break;
      }
      unsigned e = 0;
      try {
        e = pqr_decompose(cur, stage.prime).e;
      } catch (const std::exception& ex) {
        fail(rep.budget_ok, where + ": stage input rejected: " + ex.what());
        chain_ok = false;
        break;
      }
      const unsigned delta = static_cast<unsigned>(stage.digits.size()) - 1;
      const unsigned musum = std::accumulate(stage.mus.begin(), stage.mus.end(), 0u);
      if (delta > e) {
        fail(rep.budget_ok, where + ": delta exceeds quotient degree e");
      }
      if (musum > (e + 1) * (e + 1)) {
        fail(rep.budget_ok, where + ": mu sum exceeds (e+1)^2");
      }
      for (std::size_t t = 0; t < stage.digits.size() && chain_ok; ++t) {
        if (stage.digits[t] >= stage.prime) {
          fail(rep.budget_ok, where + ": digit out of range");
          chain_ok = false;
          break;
        }
        const Poly raw = cur.compose_affine(Integer(stage.prime), Integer(stage.digits[t]));
        const Integer pmu = ipow(Integer(stage.prime), stage.mus[t]);
        try {
          cur = raw.divided_by_integer(pmu);
        } catch (const std::exception&) {
          fail(rep.budget_ok, where + ": step " + std::to_string(t) + " does not divide by p^mu");
          chain_ok = false;
          break;
        }
      }
    }
    if (chain_ok && cur != leaf.g) {
      fail(rep.budget_ok, where + ": recomputed chain does not reproduce g");
    }
  }

  // (v) discriminant transformation per leaf.
  if (d >= 1) {
    for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
      const auto& leaf = cert.leaves[i];
      if (leaf.g.degree() != static_cast<int>(d)) continue;  // already reported
      const Integer lhs = ipow(leaf.gamma, 2 * (d - 1)) * discriminant(leaf.g);
      const Integer rhs = ipow(leaf.modulus, d * (d - 1)) * disc_f;
      if (lhs != rhs) {
        fail(rep.disc_relation_ok, "leaf " + std::to_string(i) + ": discriminant relation fails");
      }
    }
  }

  return rep;
}

}  // namespace formsum
