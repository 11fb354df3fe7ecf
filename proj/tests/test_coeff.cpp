#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvkit/errors.hpp"
#include <random>

#include "rvkit/kpoly.hpp"

using namespace rvkit;

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational(2, 3) + Rational(1, 3) == Rational(1));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK((Rational(7, -14)) == Rational(-1, 2));
  CHECK(Rational::parse("3/4").value() == Rational(3, 4));
  CHECK(Rational::parse("-5").value() == Rational(-5));
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("x").has_value());
  CHECK_THROWS_AS(Rational(1, 0), Error);
  Rational root;
  CHECK(Rational(9, 4).sqrt(&root));
  CHECK(root == Rational(3, 2));
  CHECK(!Rational(2).sqrt(&root));
}

TEST_CASE("gamma values order and arithmetic") {
  GammaValue minf = GammaValue::minus_inf();
  GammaValue pinf = GammaValue::plus_inf();
  GammaValue one = GammaValue::finite(Rational(1));
  CHECK(minf < one);
  CHECK(one < pinf);
  CHECK(minf < pinf);
  CHECK((one + GammaValue::finite(Rational(1, 2))) == GammaValue::finite(Rational(3, 2)));
  CHECK((pinf + one).is_plus_inf());
  CHECK(GammaValue::parse("-inf")->is_minus_inf());
  CHECK(GammaValue::parse("5/3")->value() == Rational(5, 3));
}

TEST_CASE("number field arithmetic over Q") {
  FieldPtr q = NumberField::rationals();
  KElem a = KElem::of(q, Rational(2, 3));
  KElem b = KElem::of(q, Rational(1, 3));
  CHECK((a + b).is_one());
  CHECK((a * b) == KElem::of(q, Rational(2, 9)));
  CHECK(a.inv() == KElem::of(q, Rational(3, 2)));
  CHECK_THROWS_AS(KElem::zero(q).inv(), Error);
}

TEST_CASE("number field arithmetic over a quadratic extension") {
  FieldPtr f = NumberField::create({Rational(-2), Rational(0)});  // y^2 - 2
  KElem y = KElem::generator(f);
  CHECK(y * y == KElem::of(f, Rational(2)));
  // inv(1 + y) = -1 + y since (1+y)(-1+y) = 1
  KElem inv = (KElem::one(f) + y).inv();
  CHECK(inv == KElem::from_coeffs(f, {Rational(-1), Rational(1)}));
  CHECK((KElem::one(f) + y) * inv == KElem::one(f));
  // field products and inverses are compatible
  KElem u = KElem::from_coeffs(f, {Rational(3), Rational(-1)});
  KElem v = KElem::from_coeffs(f, {Rational(1, 2), Rational(5)});
  CHECK((u * v).inv() == u.inv() * v.inv());
  CHECK(u * u.inv() == KElem::one(f));
}

TEST_CASE("declared modulus with a rational root is rejected") {
  CHECK_THROWS_AS(NumberField::create({Rational(-1), Rational(0)}), Error);  // y^2 - 1
  CHECK_THROWS_AS(NumberField::create({Rational(0), Rational(-1)}), Error);  // y^2 - y
}

TEST_CASE("k_poly_roots factorizations") {
  FieldPtr q = NumberField::rationals();
  auto P = [&](std::vector<long> cs) {
    std::vector<KElem> v;
    for (long c : cs) v.push_back(KElem::of(q, Rational(c)));
    return KPoly(q, v);
  };
  SUBCASE("rational roots with no leftovers") {
    KPolyRoots r = k_poly_roots(P({2, -3, 1}));  // y^2 - 3y + 2
    REQUIRE(r.roots.size() == 2);
    CHECK(r.unresolved.empty());
    std::vector<Rational> got;
    for (auto& [root, m] : r.roots) {
      CHECK(m == 1);
      got.push_back(root.rational_part());
    }
    std::sort(got.begin(), got.end());
    CHECK(got[0] == Rational(1));
    CHECK(got[1] == Rational(2));
  }
  SUBCASE("irreducible quadratic stays unresolved") {
    KPolyRoots r = k_poly_roots(P({-2, 0, 1}));  // y^2 - 2
    CHECK(r.roots.empty());
    REQUIRE(r.unresolved.size() == 1);
    CHECK(r.unresolved[0].degree() == 2);
  }
  SUBCASE("repeated root") {
    KPolyRoots r = k_poly_roots(P({0, 0, 1}));  // y^2
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].second == 2);
    CHECK(r.roots[0].first.is_zero());
  }
  SUBCASE("reconstruction is exact") {
    KPoly p = P({-4, 0, 3, 1});  // (y - 1)(y^2 + 2y + 4), second factor irreducible
    KPolyRoots r = k_poly_roots(p);
    KPoly rebuilt = KPoly::constant(r.leading);
    for (auto& [root, m] : r.roots)
      for (int i = 0; i < m; ++i)
        rebuilt = rebuilt * KPoly(q, {-root, KElem::one(q)});
    for (auto& u : r.unresolved) rebuilt = rebuilt * u;
    CHECK(rebuilt == p);
  }
  SUBCASE("sqrt2 resolves over the right field") {
    FieldPtr f = NumberField::create({Rational(-2), Rational(0)});
    std::vector<KElem> v = {KElem::of(f, Rational(-2)), KElem::zero(f), KElem::one(f)};
    KPolyRoots r = k_poly_roots(KPoly(f, v));
    REQUIRE(r.roots.size() == 2);
    CHECK(r.unresolved.empty());
  }
}

TEST_CASE("field inverse identities hold on random elements") {
  FieldPtr f = NumberField::create({Rational(-2), Rational(0)});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  int tried = 0;
  for (int i = 0; i < 100 && tried < 60; ++i) {
    KElem a = KElem::from_coeffs(f, {Rational(d(rng)), Rational(d(rng))});
    KElem b = KElem::from_coeffs(f, {Rational(d(rng)), Rational(d(rng))});
    if (a.is_zero() || b.is_zero()) continue;
    ++tried;
    CHECK((a * b).inv() == a.inv() * b.inv());
    CHECK(a * a.inv() == KElem::one(f));
  }
  CHECK(tried >= 50);
}
