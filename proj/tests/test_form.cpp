#include <catch_amalgamated.hpp>

#include "formsum/form.hpp"
#include "helpers.hpp"

using namespace formsum;

namespace {

Mat2 random_invertible(std::mt19937_64& rng, long long bound) {
  while (true) {
    Mat2 m{testutil::random_int(rng, -bound, bound), testutil::random_int(rng, -bound, bound),
           testutil::random_int(rng, -bound, bound), testutil::random_int(rng, -bound, bound)};
    if (m.det() != 0) return m;
  }
}

}  // namespace

TEST_CASE("form parsing and evaluation", "[form]") {
  const BinaryForm f = BinaryForm::from_string("3; 1 0 0 2");  // x1^3 + 2 x2^3
  CHECK(f.degree() == 3);
  CHECK(f.eval(1, 1) == 3);
  CHECK(f.eval(2, -1) == 6);
  CHECK(f.norm() == 2);
  CHECK(f.to_string() == "3; 1 0 0 2");
  CHECK_THROWS_AS(BinaryForm::from_string("2; 1 0"), std::invalid_argument);
  CHECK_THROWS_AS(BinaryForm::from_string("1 0 1"), std::invalid_argument);
  CHECK_THROWS_AS(BinaryForm({Integer(0), Integer(0)}), std::invalid_argument);
}

TEST_CASE("disc_form: examples", "[form]") {
  // x1 x2: projective roots [1,0], [0,1]; the pair product is 1.
  CHECK(disc_form(BinaryForm::from_string("2; 0 1 0")) == 1);
  CHECK(disc_form(BinaryForm::from_string("2; 1 0 1")) == -4);
  CHECK(disc_form(BinaryForm::from_string("3; 0 1 0 0")) == 0);  // x1^2 x2
  CHECK(disc_form(BinaryForm::from_string("3; 1 0 0 2")) == -108);
  CHECK(disc_form(BinaryForm::from_string("1; 1 1")) == 1);
}

TEST_CASE("disc_form matches disc_uni on the dehomogenization", "[form]") {
  // For forms with nonzero x1^d coefficient the two routes must agree.
  auto rng = testutil::make_rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const BinaryForm f = testutil::random_form(rng, 2 + trial % 4, 9);
    if (f.coeff(0) == 0) continue;
    CHECK(disc_form(f) == disc_uni(f.dehomog_x(), f.degree()));
  }
}

TEST_CASE("disc_uni with padded degree", "[form]") {
  const Poly f = Poly::from_string("1 1");  // x + 1
  CHECK(disc_uni(f, 1) == 1);
  // One root at infinity: the degree-2 form is x2 (x1 + x2).
  CHECK(disc_uni(f, 2) == disc_form(BinaryForm::from_string("2; 0 1 1")));
  // Two roots at infinity: repeated, so the discriminant vanishes.
  CHECK(disc_uni(f, 3) == 0);
  CHECK_THROWS_AS(disc_uni(f, 0), std::invalid_argument);
}

TEST_CASE("gl2_act: examples", "[form]") {
  const BinaryForm f = BinaryForm::from_string("3; 0 1 0 0");  // x1^2 x2
  const Mat2 identity{1, 0, 0, 1};
  CHECK(gl2_act(f, identity) == f);

  const Mat2 swap{0, 1, 1, 0};
  CHECK(gl2_act(f, swap) == BinaryForm::from_string("3; 0 0 1 0"));  // x1 x2^2

  // x1 -> x1 + x2 sends x1 x2 to x1 x2 + x2^2.
  const Mat2 shear{1, 1, 0, 1};
  CHECK(gl2_act(BinaryForm::from_string("2; 0 1 0"), shear) == BinaryForm::from_string("2; 0 1 1"));

  CHECK_THROWS_AS(gl2_act(f, Mat2{1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("discriminant transformation law on random (F, M)", "[form]") {
  auto rng = testutil::make_rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryForm f = testutil::random_form(rng, 1 + trial % 5, 5);
    const Mat2 m = random_invertible(rng, 5);
    const unsigned d = f.degree();
    const Integer lhs = disc_form(gl2_act(f, m));
    const Integer rhs = ipow(m.det(), d * (d - 1)) * disc_form(f);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("disc_form is independent of the shear parameter", "[form]") {
  auto rng = testutil::make_rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryForm f = testutil::random_form(rng, 2 + trial % 4, 7);
    const Integer reference = disc_form(f);
    // Any shear with F(1, t) != 0 must reproduce the same integer.
    const Poly along = f.dehomog_y();
    for (unsigned t = 0; t <= f.degree() + 1; ++t) {
      if (along.eval(Integer(t)) == 0) continue;
      const BinaryForm sheared = gl2_act(f, Mat2{Integer(1), Integer(0), Integer(t), Integer(1)});
      CHECK(discriminant(sheared.dehomog_x()) == reference);
    }
  }
}

TEST_CASE("shape_decompose: examples", "[form]") {
  {
    const auto s = shape_decompose(BinaryForm::from_string("3; 0 1 1 0"));  // x1 x2 (x1 + x2)
    CHECK(s.d1 == 1);
    CHECK(s.d2 == 1);
    CHECK(s.g == BinaryForm::from_string("1; 1 1"));
    CHECK(s.d_prime == 2);
    CHECK(s.d_doubleprime == 1);
    CHECK(s.reassembled() == BinaryForm::from_string("3; 0 1 1 0"));
  }
  {
    const auto s = shape_decompose(BinaryForm::from_string("3; 1 0 0 2"));
    CHECK(s.d1 == 0);
    CHECK(s.d2 == 0);
    CHECK(s.g == BinaryForm::from_string("3; 1 0 0 2"));
    CHECK(s.g.coeff(0) == 1);
    CHECK(s.g.coeff(3) == 2);
  }
  {
    const auto s = shape_decompose(BinaryForm::from_string("3; 0 1 0 1"));  // x2 (x1^2 + x2^2)
    CHECK(s.d1 == 0);
    CHECK(s.d2 == 1);
    CHECK(s.g == BinaryForm::from_string("2; 1 0 1"));
  }
  // Zero discriminant is rejected with a repeated-factor witness.
  try {
    shape_decompose(BinaryForm::from_string("2; 1 2 1"));  // (x1 + x2)^2
    FAIL("expected rejection");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("witness") != std::string::npos);
    CHECK(std::string(e.what()).find("x + 1") != std::string::npos);
  }
}

TEST_CASE("delta_of_form: examples", "[form]") {
  CHECK(delta_of_form(BinaryForm::from_string("3; 0 1 1 0")) == 1);
  CHECK(delta_of_form(BinaryForm::from_string("2; 1 0 1")) == Rational(3, 2));
  CHECK(delta_of_form(BinaryForm::from_string("3; 1 0 0 2")) == 2);  // psi(108)
}

TEST_CASE("specialize: examples and the defining identity", "[form]") {
  {
    const auto s = shape_decompose(BinaryForm::from_string("2; 1 0 1"));
    const auto sp = specialize(s, 2);
    CHECK(sp.f == Poly::from_string("4 0 1"));
    CHECK(sp.q == 1);
  }
  {
    const auto s = shape_decompose(BinaryForm::from_string("2; 2 0 1"));  // 2x1^2 + x2^2
    const auto sp = specialize(s, 2);
    CHECK(sp.f == Poly::from_string("2 0 1"));
    CHECK(sp.q == 2);
  }
  {
    // F = x1 (x1 + x2): d1 = 1, G = x1 + x2, n2 = 3 -> x^2 + 3x.
    const auto s = shape_decompose(BinaryForm::from_string("2; 1 1 0"));
    const auto sp = specialize(s, 3);
    CHECK(sp.f == Poly::from_string("0 3 1"));
    CHECK(sp.q == 1);
  }
  CHECK_THROWS_AS(specialize(shape_decompose(BinaryForm::from_string("2; 1 0 1")), 0),
                  std::invalid_argument);
}

TEST_CASE("specialize identity q * f = x^d1 G(x, n2) on random shapes", "[form]") {
  auto rng = testutil::make_rng(67);
  int done = 0;
  while (done < 40) {
    const BinaryForm f = testutil::random_squarefree_form(rng, 2, 5, 9);
    const auto s = shape_decompose(f);
    if (!s.g.is_primitive()) continue;
    for (std::uint64_t n2 = 1; n2 <= 6; ++n2) {
      const auto sp = specialize(s, Integer(n2));
      CHECK(sp.f.is_primitive());
      CHECK(sp.f.degree() == static_cast<int>(s.d_prime));
      // coefficientwise identity
      const Poly lhs = sp.q * sp.f;
      std::vector<Integer> c(s.d_doubleprime + 1);
      Integer pw = 1;
      for (unsigned j = 0; j <= s.d_doubleprime; ++j) {
        c[s.d_doubleprime - j] = s.g.coeff(j) * pw;
        pw *= n2;
      }
      const Poly rhs = Poly(std::move(c)).shifted_up(s.d1);
      CHECK(lhs == rhs);
    }
    ++done;
  }
}

TEST_CASE("divisibility of disc(F) at primes dividing the top G coefficients", "[form]") {
  // Both clauses: p | gcd(a0, a1) forces p | disc(F); and with d2 = 1
  // already p | a0 does.
  auto rng = testutil::make_rng(71);
  int both_clause_hits = 0;
  int d2_clause_hits = 0;
  int done = 0;
  while (done < 100) {
    BinaryForm f = testutil::random_squarefree_form(rng, 2, 5, 9);
    const auto s = shape_decompose(f);
    const Integer disc = disc_form(f);
    const Integer a0 = s.g.coeff(0);
    const Integer a1 = s.d_doubleprime >= 1 ? s.g.coeff(1) : Integer(0);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      if (a0 % Integer(p) == 0 && a1 % Integer(p) == 0) {
        CHECK(disc % Integer(p) == 0);
        ++both_clause_hits;
      }
      if (s.d2 == 1 && a0 % Integer(p) == 0) {
        CHECK(disc % Integer(p) == 0);
        ++d2_clause_hits;
      }
    }
    ++done;
  }
  // The random stream must actually exercise both clauses.
  CHECK(both_clause_hits > 0);
  CHECK(d2_clause_hits > 0);
}
