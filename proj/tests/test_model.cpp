#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rvkit/errors.hpp"
#include "rvkit/formula.hpp"
#include "rvkit/rv_value.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }

Puiseux P(const std::string& text) { return parse_puiseux(Q(), text); }
}  // namespace

TEST_CASE("puiseux arithmetic on exact elements") {
  // mul(t + t^2, t^(-1)) = 1 + t
  CHECK(P("t + t^2") * P("t^(-1)") == P("1 + t"));
  // add(t, -t) = 0 exactly
  CHECK((P("t") + P("-t")).is_exact_zero());
  CHECK((P("t") - P("t")).is_exact_zero());
  CHECK(P("3*t^(1/2) - 2*t^2").val() == GammaValue::finite(Rational(1, 2)));
  CHECK(Puiseux::zero(Q()).val().is_plus_inf());
}

TEST_CASE("truncated multiplication keeps the determined terms") {
  // (1 - t known mod t^{>2}) * (1 + t) = 1 - t^2 with precision 2
  Puiseux a = Puiseux::from_terms(Q(), {{Rational(0), KElem::one(Q())},
                                        {Rational(1), KElem::of(Q(), Rational(-1))}},
                                  GammaValue::finite(Rational(2)));
  Puiseux b = P("1 + t");
  Puiseux prod = a * b;
  CHECK(prod.precision() == GammaValue::finite(Rational(2)));
  CHECK(prod.coeff_at(Rational(0)).is_one());
  CHECK(prod.coeff_at(Rational(1)).is_zero());
  CHECK(prod.coeff_at(Rational(2)) == KElem::of(Q(), Rational(-1)));
}

TEST_CASE("truncated zero blocks valuation") {
  Puiseux z = Puiseux::from_terms(Q(), {}, GammaValue::finite(Rational(3)));
  CHECK(z.is_truncated_zero());
  CHECK_THROWS_AS(z.val(), Error);
  CHECK_THROWS_AS(z.rv(), Error);
}

TEST_CASE("rv and the leading term") {
  CHECK(P("2*t + 5*t^3").rv() == RvElem::unit(Rational(1), KElem::of(Q(), Rational(2))));
  CHECK(Puiseux::zero(Q()).rv().is_infinity());
  CHECK((P("t + t^2") * P("t^(-1)")).rv() == RvElem::unit(Rational(0), KElem::one(Q())));
}

TEST_CASE("vf_inv") {
  SUBCASE("geometric series to the target") {
    Puiseux inv = P("1 + t").inv(Rational(3));
    Puiseux check = P("1 + t") * inv;
    // agrees with 1 on all exponents <= 3
    CHECK(check.coeff_at(Rational(0)).is_one());
    for (long k = 1; k <= 3; ++k) CHECK(check.coeff_at(Rational(k)).is_zero());
    CHECK(inv.coeff_at(Rational(2)).is_one());
  }
  SUBCASE("monomial inverse is exact") {
    Puiseux inv = P("t").inv(Rational(5));
    CHECK(inv.exact());
    CHECK(inv == P("t^(-1)"));
  }
  SUBCASE("constant inverse is exact") {
    Puiseux inv = P("2").inv(Rational(0));
    CHECK(inv.exact());
    CHECK(inv == P("1/2"));
  }
  CHECK_THROWS_AS(Puiseux::zero(Q()).inv(Rational(1)), Error);
}

TEST_CASE("rv multiplication and the preorder") {
  RvElem a = RvElem::unit(Rational(1), KElem::of(Q(), Rational(2)));
  RvElem b = RvElem::unit(Rational(2), KElem::of(Q(), Rational(3)));
  CHECK(a * b == RvElem::unit(Rational(3), KElem::of(Q(), Rational(6))));
  CHECK(RvElem::leq(RvElem::unit(Rational(0), KElem::of(Q(), Rational(5))),
                    RvElem::unit(Rational(1), KElem::one(Q()))));
  CHECK(!RvElem::leq(RvElem::infinity(Q()), RvElem::unit(Rational(1), KElem::one(Q()))));
  CHECK((a * RvElem::infinity(Q())).is_infinity());
}

TEST_CASE("k_term_sum") {
  auto unit = [](long g, long c) {
    return Rv0::of(RvElem::unit(Rational(g), KElem::of(Q(), Rational(c))));
  };
  SUBCASE("additive inverse gives the K zero") {
    auto r = k_term_sum({unit(0, 2), unit(0, -2)});
    REQUIRE(r.has_value());
    CHECK(r->is_k_zero());
  }
  SUBCASE("a summand of nonzero value is undefined") {
    CHECK(!k_term_sum({unit(0, 1), unit(1, 5)}).has_value());
  }
  SUBCASE("residue addition") {
    auto r = k_term_sum({unit(0, 2), unit(0, 3)});
    REQUIRE(r.has_value());
    CHECK(r->rv() == RvElem::unit(Rational(0), KElem::of(Q(), Rational(5))));
  }
  SUBCASE("the K zero participates silently") {
    auto r = k_term_sum({unit(0, 2), Rv0::k_zero(Q())});
    REQUIRE(r.has_value());
    CHECK(r->rv() == RvElem::unit(Rational(0), KElem::of(Q(), Rational(2))));
  }
  SUBCASE("infinity is not a K element") {
    CHECK(!k_term_sum({unit(0, 1), Rv0::of(RvElem::infinity(Q()))}).has_value());
  }
}

TEST_CASE("sections") {
  RvElem t23 = RvElem::unit(Rational(2), KElem::of(Q(), Rational(3)));
  CHECK(section(SectionKind::RvSection, t23) == P("3*t^2"));
  CHECK(section(SectionKind::KSection, t23).is_exact_zero());
  CHECK(section(SectionKind::KSection,
                RvElem::unit(Rational(0), KElem::of(Q(), Rational(3)))) == P("3"));
  CHECK(section(SectionKind::RvSection, RvElem::infinity(Q())).is_exact_zero());
  // multiplicativity of the monomial section
  RvElem a = RvElem::unit(Rational(0), KElem::one(Q()));
  RvElem b = RvElem::unit(Rational(1), KElem::of(Q(), Rational(2)));
  CHECK(section(SectionKind::RvSection, a) * section(SectionKind::RvSection, b) ==
        section(SectionKind::RvSection, a * b));
  // rv recovers the class through the section
  CHECK(section(SectionKind::RvSection, t23).rv() == t23);
}

TEST_CASE("ultrametric law on random exact elements") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<long> coeff(-5, 5);
  auto rand_elem = [&]() {
    Puiseux x = Puiseux::zero(Q());
    for (int i = 0; i < 3; ++i) {
      long c = coeff(rng);
      if (c == 0) continue;
      x = x + Puiseux::monomial(KElem::of(Q(), Rational(c)), Rational(num(rng), den(rng)));
    }
    return x;
  };
  for (int i = 0; i < 100; ++i) {
    Puiseux x = rand_elem(), y = rand_elem();
    GammaValue vx = x.is_exact_zero() ? GammaValue::plus_inf() : x.val();
    GammaValue vy = y.is_exact_zero() ? GammaValue::plus_inf() : y.val();
    Puiseux sum = x + y;
    GammaValue vsum = sum.is_exact_zero() ? GammaValue::plus_inf() : sum.val();
    CHECK(vsum >= min(vx, vy));
    if (vx != vy) CHECK(vsum == min(vx, vy));
    Puiseux prod = x * y;
    GammaValue vprod = prod.is_exact_zero() ? GammaValue::plus_inf() : prod.val();
    CHECK(vprod == vx + vy);
    // rv is multiplicative on nonzero elements
    if (!x.is_exact_zero() && !y.is_exact_zero()) CHECK(prod.rv() == x.rv() * y.rv());
  }
}
