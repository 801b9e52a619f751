#include <catch_amalgamated.hpp>

#include "formsum/harness.hpp"
#include "formsum/sums.hpp"
#include "helpers.hpp"

using namespace formsum;

TEST_CASE("t_sum: examples", "[sums]") {
  CHECK(t_sum(4, mf_tau(), Poly::from_string("0 1")).sum == 8);  // 1+2+2+3
  CHECK(t_sum(3, mf_tau(), Poly::from_string("1 0 1")).sum == 8);  // tau(2)+tau(5)+tau(10)
  const auto v = t_sum(10, mf_one(), Poly::from_string("-9 0 1"));  // zero at n = 3
  CHECK(v.zeros_skipped == 1);
  CHECK(v.sum == 9);
  CHECK_THROWS_AS(t_sum(4, mf_tau(), Poly()), std::invalid_argument);
}

TEST_CASE("t_sum: values beyond 62 bits take the big-integer path", "[sums]") {
  // 10^18 x^2 keeps the factorizations smooth while forcing the bound past
  // the fast-path cutoff.
  const Poly f = Poly::from_string("0 0 1000000000000000000");
  const auto v = t_sum(30, mf_tau(), f);
  Rational expect = 0;
  for (std::uint64_t n = 1; n <= 30; ++n) {
    expect += eval_mult(mf_tau(), f.eval(Integer(n)));
  }
  CHECK(v.sum == expect);
  CHECK(v.zeros_skipped == 0);
}

TEST_CASE("s_sum: examples", "[sums]") {
  CHECK(s_sum(2, 2, mf_tau(), BinaryForm::from_string("2; 0 1 0")).sum == 8);
  CHECK(s_sum(1, 1, mf_tau(), BinaryForm::from_string("2; 1 0 1")).sum == 2);
  const auto v = s_sum(10, 10, mf_one(), BinaryForm::from_string("2; 0 1 0"));
  CHECK(v.zeros_skipped == 0);
  CHECK(v.sum == 100);
  // x1^2 - x2^2 vanishes on the diagonal
  const auto w = s_sum(10, 10, mf_one(), BinaryForm::from_string("2; 1 0 -1"));
  CHECK(w.zeros_skipped == 10);
  CHECK(w.sum == 90);
}

TEST_CASE("s_sum: symmetric rectangle variant", "[sums]") {
  // |n1|, |n2| <= 2 for x1 x2: zeros along both axes (the (2X+1)^2 grid
  // minus the nonzero 2X * 2X block).
  const auto v = s_sum(2, 2, mf_one(), BinaryForm::from_string("2; 0 1 0"), 0, true);
  CHECK(v.zeros_skipped == 9);
  CHECK(v.sum == 16);
  // values tau(|n1 n2|) over the four quadrants
  const auto w = s_sum(2, 2, mf_tau(), BinaryForm::from_string("2; 0 1 0"), 0, true);
  CHECK(w.sum == 4 * 8);
}

TEST_CASE("s_sum with h = one counts the rectangle minus zeros", "[sums]") {
  auto rng = testutil::make_rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryForm f = testutil::random_form(rng, 1 + trial % 4, 9);
    const auto v = s_sum(8, 13, mf_one(), f);
    CHECK(v.sum == Rational(8 * 13 - v.zeros_skipped));
  }
}

TEST_CASE("zero counts respect the line bound", "[sums]") {
  // A nonzero form vanishes on at most d lines, so at most d * max(X1, X2)
  // grid points; a nonzero polynomial has at most d roots.
  auto rng = testutil::make_rng(331);
  for (int trial = 0; trial < 12; ++trial) {
    const BinaryForm f = testutil::random_form(rng, 1 + trial % 4, 6);
    const auto v = s_sum(15, 9, mf_one(), f);
    CHECK(v.zeros_skipped <= f.degree() * 15u);
    const Poly g = testutil::random_poly(rng, 1 + trial % 5, 6);
    const auto t = t_sum(40, mf_one(), g);
    CHECK(t.zeros_skipped <= static_cast<std::uint64_t>(g.degree()));
  }
}

TEST_CASE("s_sum symmetry under variable swap", "[sums]") {
  auto rng = testutil::make_rng(311);
  for (int trial = 0; trial < 8; ++trial) {
    const BinaryForm f = testutil::random_form(rng, 1 + trial % 4, 9);
    // swap the variables by reversing the coefficient list
    std::vector<Integer> rev(f.coeffs().rbegin(), f.coeffs().rend());
    const BinaryForm swapped{std::move(rev)};
    const auto a = s_sum(7, 11, mf_tau(), f);
    const auto b = s_sum(11, 7, mf_tau(), swapped);
    CHECK(a.sum == b.sum);
    CHECK(a.zeros_skipped == b.zeros_skipped);
  }
}

TEST_CASE("s_sum is independent of the parallelism degree", "[sums]") {
  const BinaryForm f = BinaryForm::from_string("3; 1 0 0 2");
  const auto serial = s_sum(40, 40, mf_tau(), f, 1);
  const auto parallel = s_sum(40, 40, mf_tau(), f, 8);
  CHECK(serial.sum == parallel.sum);
  CHECK(serial.zeros_skipped == parallel.zeros_skipped);
}

TEST_CASE("euler_product: examples", "[sums]") {
  // h = one: every factor is 1
  const auto s = shape_decompose(BinaryForm::from_string("2; 1 0 1"));
  CHECK(euler_product(s, mf_one(), 100, 100) == 1);
  CHECK(euler_product(s, mf_tau(), 10, 10) == Rational(7, 5));
  // d1 = 1, d2 = 0, G-part contributing 1: F = x1 (x1^2 + x2^2), X1 = 3.
  const auto s2 = shape_decompose(BinaryForm::from_string("3; 1 0 1 0"));
  CHECK(s2.d1 == 1);
  CHECK(s2.d2 == 0);
  CHECK(euler_product(s2, mf_tau(), 3, 1000) == 2);  // (1+1/2)(1+1/3)
}

TEST_CASE("nair_rhs: examples", "[sums]") {
  CHECK(nair_rhs(4, mf_one(), Poly::from_string("0 1")) == Rational(25, 9));
  CHECK(nair_rhs(3, mf_one(), Poly::from_string("1 0 1")) == Rational(9, 4));
  CHECK(nair_rhs(1, mf_tau(), Poly::from_string("1 0 1")) == 1);
  // fpd-bearing input is rejected with a pointer to the removal routine
  try {
    nair_rhs(10, mf_tau(), Poly::from_string("0 1 1"));
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("remove_all_fpd") != std::string::npos);
  }
}

TEST_CASE("nair_exp_rhs: examples", "[sums]") {
  {
    const auto r = nair_exp_rhs(2, mf_one(), Poly::from_string("0 1"));
    CHECK(r.exponent_sum == Rational(1, 2));
    CHECK(r.product_part == 1);  // 2 * (1 - 1/2)
  }
  {
    const auto r = nair_exp_rhs(1, mf_one(), Poly::from_string("0 1"));
    CHECK(r.exponent_sum == 0);
    CHECK(r.product_part == 1);
    CHECK(r.decimal.substr(0, 1) == "1");
  }
  {
    const auto r = nair_exp_rhs(5, mf_tau(), Poly::from_string("1 0 1"));
    CHECK(r.exponent_sum == Rational(9, 5));  // 2*(1/2) + 0 + 2*(2/5)
  }
}

TEST_CASE("theorem1_harness: h = one drives the ratio to the zero-density defect", "[sums]") {
  const BinaryForm f = BinaryForm::from_string("2; 0 1 0");  // x1 x2, no zeros on the grid
  const auto rep = theorem1_harness(f, mf_one(), {10, 20}, Rational(2));
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].euler == 1);
  CHECK(*rep.rows[0].ratio == 1);
  CHECK(*rep.rows[1].ratio == 1);
  CHECK(rep.spread_ok);
  CHECK(*rep.spread == 1);
}

TEST_CASE("theorem1_harness: small grid cubic", "[sums]") {
  const auto rep = theorem1_harness(BinaryForm::from_string("3; 1 0 0 2"), mf_tau(), {30, 60}, Rational(2));
  CHECK(rep.delta == 2);
  CHECK(rep.rows[0].euler > 1);
  CHECK(*rep.spread < 2);
}

TEST_CASE("corollary2_harness: degenerate one-point grid passes trivially", "[sums]") {
  const auto rep = corollary2_harness(BinaryForm::from_string("3; 1 0 0 2"), {100}, Rational(2));
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.spread_ok);
  REQUIRE(rep.rows[0].ratio_decimal.has_value());
  // 10 significant digits reported
  const std::string& text = *rep.rows[0].ratio_decimal;
  std::size_t digits = 0;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) ++digits;
  }
  CHECK(digits == 10);
}

TEST_CASE("theorem3_harness: stable ratio for x^2 + 1 on a small grid", "[sums]") {
  const auto rep = theorem3_harness(Poly::from_string("1 0 1"), mf_tau(), {100, 200}, Rational(2));
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].ratio.has_value());
  CHECK(rep.spread_ok);
}

TEST_CASE("specialization inequality on random shapes and built-ins", "[sums]") {
  auto rng = testutil::make_rng(313);
  const MultFunc hs[] = {mf_tau(), mf_one(), mf_two_pow_omega()};
  int done = 0;
  while (done < 8) {
    const BinaryForm f = testutil::random_squarefree_form(rng, 2, 4, 7);
    if (!shape_decompose(f).g.is_primitive()) continue;
    const auto& h = hs[done % 3];
    const auto check = check_specialization_inequality(f, h, 20, 20);
    CAPTURE(f.to_string(), h.name);
    CHECK(check.holds);
    ++done;
  }
}

TEST_CASE("specialized rho matches the dehomogenized count plus d1 at good primes", "[sums]") {
  // For p > d with p not dividing n2 * disc(F):
  //   rho_{f_{n2}}(p) = rho_{G(x,1)}(p) + d1.
  auto rng = testutil::make_rng(317);
  int checked = 0;
  int done = 0;
  while (done < 20) {
    const BinaryForm f = testutil::random_squarefree_form(rng, 2, 5, 9);
    const auto s = shape_decompose(f);
    if (!s.g.is_primitive()) continue;
    const Integer disc = disc_form(f);
    std::uniform_int_distribution<std::uint64_t> n2_dist(1, 30);
    const std::uint64_t n2 = n2_dist(rng);
    const auto sp = specialize(s, Integer(n2));
    const Poly gx1 = s.g.dehomog_x();
    for (std::uint32_t p : default_sieve().primes()) {
      if (p > 100) break;
      if (p <= s.degree) continue;
      if (Integer(n2) % p == 0 || disc % Integer(p) == 0) continue;
      CHECK(rho_brute(sp.f, p) == rho_brute(gx1, p) + Integer(s.d1));
      ++checked;
    }
    ++done;
  }
  CHECK(checked > 100);
}
