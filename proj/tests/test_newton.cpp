#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "rvkit/errors.hpp"
#include "rvkit/formula.hpp"
#include "rvkit/decompose.hpp"
#include "rvkit/newton.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }
Puiseux P(const std::string& text) { return parse_puiseux(Q(), text); }

VfPoly poly(const std::string& text) {
  return vf_term_to_poly(parse_vf_term(Q(), text), "X", Q());
}

// oracle: expand a product of linear factors, remembering the roots
VfPoly expand(const std::vector<Puiseux>& roots) {
  VfPoly F = VfPoly::constant(Puiseux::one(Q()));
  for (const auto& r : roots) F = F * VfPoly(Q(), {-r, Puiseux::one(Q())});
  return F;
}
}  // namespace

TEST_CASE("newton polygon vertices and segments") {
  SUBCASE("two segments") {
    // oracle: (X - t)(X - t^2) expanded
    VfPoly F = expand({P("t"), P("t^2")});
    NewtonPolygon np = newton_polygon(F);
    REQUIRE(np.vertices.size() == 3);
    CHECK(np.vertices[0] == std::make_pair(0, Rational(3)));
    CHECK(np.vertices[1] == std::make_pair(1, Rational(1)));
    CHECK(np.vertices[2] == std::make_pair(2, Rational(0)));
    REQUIRE(np.segments.size() == 2);
    CHECK(np.segments[0].slope == Rational(-2));
    CHECK(np.segments[0].length == 1);
    CHECK(np.segments[1].slope == Rational(-1));
    CHECK(np.segments[1].length == 1);
  }
  SUBCASE("fractional slope") {
    NewtonPolygon np = newton_polygon(poly("X^2 - t"));
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(-1, 2));
    CHECK(np.segments[0].length == 2);
  }
  SUBCASE("monomial has no finite segment") {
    NewtonPolygon np = newton_polygon(poly("X^2"));
    CHECK(np.segments.empty());
    CHECK(np.order_at_zero == 2);
  }
}

TEST_CASE("root valuations by slope-length") {
  auto vals = [](const VfPoly& F) {
    std::multiset<std::string> out;
    for (auto& [g, m] : root_valuations(F))
      for (int i = 0; i < m; ++i) out.insert(g.to_string());
    return out;
  };
  CHECK(vals(expand({P("t"), P("t^2")})) == std::multiset<std::string>{"1", "2"});
  CHECK(vals(poly("X^2 - t")) == std::multiset<std::string>{"1/2", "1/2"});
  CHECK(vals(poly("X^3 - t*X")) == std::multiset<std::string>{"1/2", "1/2", "inf"});
}

TEST_CASE("slope-length law on random factorizations") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> nroots(2, 5);
  std::uniform_int_distribution<long> num(-8, 8);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<long> coeff(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    int n = nroots(rng);
    std::vector<Puiseux> roots;
    std::multiset<std::string> expected;
    for (int i = 0; i < n; ++i) {
      long c = coeff(rng);
      Puiseux r = c == 0 ? Puiseux::zero(Q())
                         : Puiseux::monomial(KElem::of(Q(), Rational(c)),
                                             Rational(num(rng), den(rng)));
      if (c != 0 && coeff(rng) > 3)
        r = r + Puiseux::monomial(KElem::one(Q()), r.val().value() + Rational(1, 2));
      roots.push_back(r);
      expected.insert(r.is_exact_zero() ? "inf" : r.val().to_string());
    }
    std::multiset<std::string> got;
    for (auto& [g, m] : root_valuations(expand(roots)))
      for (int i = 0; i < m; ++i) got.insert(g.to_string());
    CHECK(got == expected);
  }
}

TEST_CASE("root rv classes") {
  SUBCASE("plus minus t") {
    RootClasses rc = root_rv_classes(poly("X^2 - t^2"));
    REQUIRE(rc.classes.size() == 2);
    std::set<std::string> got;
    for (auto& [t, m] : rc.classes) {
      CHECK(m == 1);
      got.insert(t.to_string());
    }
    CHECK(got == std::set<std::string>{"[1;1]", "[1;-1]"});
  }
  SUBCASE("square root residues") {
    RootClasses rc = root_rv_classes(poly("X^2 - t"));
    REQUIRE(rc.classes.size() == 2);
    std::set<std::string> got;
    for (auto& [t, m] : rc.classes) got.insert(t.to_string());
    CHECK(got == std::set<std::string>{"[1/2;1]", "[1/2;-1]"});
  }
  SUBCASE("rational roots") {
    RootClasses rc = root_rv_classes(poly("X^2 - 3*X + 2"));
    std::set<std::string> got;
    for (auto& [t, m] : rc.classes) got.insert(t.to_string());
    CHECK(got == std::set<std::string>{"[0;1]", "[0;2]"});
  }
  SUBCASE("unresolved residual over Q") {
    RootClasses rc = root_rv_classes(poly("X^2 - 2"));
    CHECK(rc.classes.empty());
    REQUIRE(rc.unresolved.size() == 1);
    CHECK(rc.unresolved[0].valuation == Rational(0));
  }
  SUBCASE("degree accounting") {
    VfPoly F = poly("X^3 - t*X");
    RootClasses rc = root_rv_classes(F);
    int total = rc.zero_root_multiplicity;
    for (auto& [t, m] : rc.classes) total += m;
    for (auto& u : rc.unresolved) total += u.factor.degree();
    CHECK(total == F.degree());
  }
}

TEST_CASE("puiseux_roots expands exact and refined roots") {
  SUBCASE("exact separation of close roots") {
    std::vector<Puiseux> roots = {P("t"), P("t + t^3")};
    auto got = puiseux_roots(expand(roots), Rational(5));
    REQUIRE(got.size() == 2);
    for (const auto& r : got) {
      CHECK(r.exact);
      bool match = (r.value - P("t")).is_exact_zero() || (r.value - P("t + t^3")).is_exact_zero();
      CHECK(match);
    }
  }
  SUBCASE("infinite expansion is truncated at the target") {
    // X^2 - (1 + t): roots are the two square roots of 1 + t
    auto got = puiseux_roots(poly("X^2 - 1 - t"), Rational(3));
    REQUIRE(got.size() == 2);
    for (const auto& r : got) {
      CHECK(!r.exact);
      Puiseux fx = poly("X^2 - 1 - t").eval(r.value.as_exact());
      CHECK(fx.val() > GammaValue::finite(Rational(3)));
    }
  }
  SUBCASE("repeated exact roots") {
    auto got = puiseux_roots(expand({P("t"), P("t"), P("1")}), Rational(4));
    int total = 0;
    for (const auto& r : got) total += r.multiplicity;
    CHECK(total == 3);
    bool saw_double = false;
    for (const auto& r : got)
      if (r.multiplicity == 2 && (r.value - P("t")).is_exact_zero()) saw_double = true;
    CHECK(saw_double);
  }
  SUBCASE("extension required is reported") {
    CHECK_THROWS_AS(puiseux_roots(poly("X^2 - 2"), Rational(2)), Error);
  }
}

TEST_CASE("rv_lift_root") {
  SUBCASE("rational root lift") {
    Puiseux b = rv_lift_root(poly("X^2 - 3*X + 2"),
                             RvElem::unit(Rational(0), KElem::of(Q(), Rational(2))), Rational(10));
    CHECK((b - P("2")).is_exact_zero());
  }
  SUBCASE("known factorization") {
    Puiseux b = rv_lift_root(poly("X^2 - t^2"), RvElem::unit(Rational(1), KElem::one(Q())),
                             Rational(10));
    CHECK((b - P("t")).is_exact_zero());
  }
  SUBCASE("linear") {
    Puiseux b = rv_lift_root(poly("X - 1"), RvElem::unit(Rational(0), KElem::one(Q())),
                             Rational(10));
    CHECK((b - P("1")).is_exact_zero());
  }
  SUBCASE("deep precision on an infinite root") {
    Puiseux b = rv_lift_root(poly("X^2 - 1 - t"), RvElem::unit(Rational(0), KElem::one(Q())),
                             Rational(21));
    CHECK(b.rv() == RvElem::unit(Rational(0), KElem::one(Q())));
    Puiseux fb = poly("X^2 - 1 - t").eval(b.as_exact());
    CHECK((fb.is_exact_zero() || fb.val() > GammaValue::finite(Rational(21))));
  }
  SUBCASE("hypothesis violations carry the failing clause") {
    auto expect_clause = [&](const RvElem& t, const std::string& clause) {
      try {
        rv_lift_root(poly("X^2 - t^2"), t, Rational(5));
        FAIL("expected HypothesisViolated for class " << t.to_string());
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisViolated);
        CHECK(e.detail().find(clause) != std::string::npos);
      }
    };
    expect_clause(RvElem::unit(Rational(1), KElem::of(Q(), Rational(5))), "vanish");
    expect_clause(RvElem::unit(Rational(3), KElem::one(Q())), "monomial");
    CHECK_THROWS_AS(
        rv_lift_root(poly("X^2 - t^2"), RvElem::infinity(Q()), Rational(5)), Error);
  }
  SUBCASE("explicit support with a bad dropped coefficient") {
    // keep {0, 2} is fine for X^2 - t^2 at class [1;1]; keeping {0, 1} is not
    VfPoly F = poly("X^2 - t^2 + t^5*X");
    std::vector<int> keep{0, 2};
    Puiseux b = rv_lift_root(F, RvElem::unit(Rational(1), KElem::one(Q())), Rational(8), keep);
    CHECK(b.rv() == RvElem::unit(Rational(1), KElem::one(Q())));
    std::vector<int> bad{0, 1};
    CHECK_THROWS_AS(
        rv_lift_root(F, RvElem::unit(Rational(1), KElem::one(Q())), Rational(8), bad), Error);
  }
}

TEST_CASE("rv on a ball") {
  SUBCASE("identity polynomial") {
    CHECK(rv_on_ball(poly("X"), Ball::closed(P("t"), GammaValue::finite(Rational(2)))) ==
          P("t").rv());
  }
  SUBCASE("quadratic at a safe ball") {
    RvElem v = rv_on_ball(poly("X^2 - t^2"), Ball::closed(P("3*t"), GammaValue::finite(Rational(2))));
    CHECK(v == P("8*t^2").rv());
  }
  SUBCASE("ball containing a root is rejected") {
    CHECK_THROWS_AS(
        rv_on_ball(poly("X"), Ball::closed(P("0"), GammaValue::finite(Rational(2)))), Error);
  }
  SUBCASE("agreement with direct evaluation at sampled points") {
    VfPoly F = poly("X^2 - t^2");
    Ball b = Ball::closed(P("3*t"), GammaValue::finite(Rational(2)));
    RvElem expected = rv_on_ball(F, b);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> c(-9, 9);
    int checked = 0;
    for (int i = 0; i < 40 && checked < 20; ++i) {
      long k = c(rng);
      if (k == 0) continue;
      Puiseux x = P("3*t") + Puiseux::monomial(KElem::of(Q(), Rational(k)),
                                               Rational(2) + Rational(std::abs(c(rng)) % 3));
      if (!b.contains(x)) continue;
      ++checked;
      CHECK(F.eval(x).rv() == expected);
    }
    CHECK(checked >= 20);
  }
}
