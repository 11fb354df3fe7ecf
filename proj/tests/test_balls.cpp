#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rvkit/errors.hpp"
#include "rvkit/formula.hpp"
#include "rvkit/swiss_cheese.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }
Puiseux P(const std::string& text) { return parse_puiseux(Q(), text); }
GammaValue G(long n, long d = 1) { return GammaValue::finite(Rational(n, d)); }
}  // namespace

TEST_CASE("ball membership and canonical centers") {
  Ball b = Ball::open(P("t"), G(2));
  CHECK(b.contains(P("t + t^3")));
  CHECK(!b.contains(P("t + t^2")));
  CHECK(!b.contains(P("1")));
  // closed(t + t^2, 2) = closed(t, 2): the order-2 term is irrelevant
  CHECK(Ball::closed(P("t + t^2"), G(2)) == Ball::closed(P("t"), G(2)));
  // open keeps the boundary term
  CHECK(Ball::open(P("t + t^2"), G(2)) != Ball::open(P("t"), G(2)));
  // point and whole line conventions
  CHECK(Ball::point(P("t")).contains(P("t")));
  CHECK(!Ball::point(P("t")).contains(P("t + t^5")));
  CHECK(Ball::whole_line(Q()).contains(P("t^(-7)")));
}

TEST_CASE("two balls intersect iff one contains the other") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-4, 6);
  std::uniform_int_distribution<long> den(1, 3);
  std::uniform_int_distribution<long> coeff(-4, 4);
  std::uniform_int_distribution<int> kind(0, 1);
  auto rand_ball = [&]() {
    Puiseux c = Puiseux::zero(Q());
    for (int i = 0; i < 2; ++i) {
      long k = coeff(rng);
      if (k != 0) c = c + Puiseux::monomial(KElem::of(Q(), Rational(k)), Rational(num(rng), den(rng)));
    }
    GammaValue r = G(num(rng), den(rng));
    return kind(rng) ? Ball::open(c, r) : Ball::closed(c, r);
  };
  for (int i = 0; i < 200; ++i) {
    Ball a = rand_ball(), b = rand_ball();
    bool disjoint = a.disjoint_from(b);
    bool nested = a.contains_ball(b) || b.contains_ball(a);
    CHECK(disjoint == !nested);
  }
}

TEST_CASE("translate cases of ball property one") {
  Ball a = Ball::open(P("t"), G(2));
  SUBCASE("center inside") {
    TranslateResult r = translate_ball(a, P("t"));
    CHECK(r.kase == TranslateCase::CenterInside);
    CHECK(r.vcr.is_plus_inf());
    CHECK(r.ball == Ball::open(P("0"), G(2)));
  }
  SUBCASE("center at level") {
    TranslateResult r = translate_ball(a, P("1"));
    CHECK(r.kase == TranslateCase::CenterAtLevel);
    CHECK(r.ball == Ball::open(P("t - 1"), G(2)));
    CHECK(r.vcr <= r.ball.radius());
  }
  SUBCASE("too deep leaves the ball unchanged") {
    TranslateResult r = translate_ball(a, P("t^5"));
    CHECK(r.kase == TranslateCase::TooDeep);
    CHECK(r.ball == a);
  }
}

TEST_CASE("diff_balls") {
  // open(1,1) - open(t,1) = open(1 - t, 1)
  Ball d = diff_balls(Ball::open(P("1"), G(1)), Ball::open(P("t"), G(1)));
  CHECK(d == Ball::open(P("1 - t"), G(1)));
  CHECK(!d.contains_zero());
  // two points
  CHECK(diff_balls(Ball::point(P("t")), Ball::point(P("t^2"))) == Ball::point(P("t - t^2")));
  // not disjoint: error
  CHECK_THROWS_AS(diff_balls(Ball::point(P("0")), Ball::point(P("0"))), Error);
  // property (6): a maximal open subball at distance gives an rv-ball
  Ball a = Ball::open(P("1"), G(0));
  Ball h = Ball::open(P("2"), G(0));
  Ball diff = diff_balls(a, h);
  CHECK(diff.is_rv_ball());
  CHECK(diff.rv_class().value() == P("-1").rv());
}

TEST_CASE("swiss cheese combine and normalize") {
  SUBCASE("subtract gives a thin annulus") {
    SwissCheese s = SwissCheese::of_ball(Ball::closed(P("0"), G(0)))
                        .subtract(SwissCheese::of_ball(Ball::open(P("0"), G(0))));
    CHECK(s.contains(P("1")));
    CHECK(s.contains(P("1 + t")));
    CHECK(!s.contains(P("t")));
    CHECK(!s.contains(P("0")));
    auto comps = s.components();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].holes.size() == 1);
  }
  SUBCASE("identical balls merge") {
    SwissCheese u = SwissCheese::of_ball(Ball::open(P("t"), G(2)))
                        .unite(SwissCheese::of_ball(Ball::open(P("t + t^3"), G(2))));
    CHECK(u.as_single_ball().value() == Ball::open(P("t"), G(2)));
  }
  SUBCASE("ultrametric disjointness") {
    SwissCheese i = SwissCheese::of_ball(Ball::closed(P("0"), G(1)))
                        .intersect(SwissCheese::of_ball(Ball::closed(P("1"), G(1))));
    CHECK(i.is_empty());
  }
  SUBCASE("island inside a hole") {
    SwissCheese s = SwissCheese::of_ball(Ball::closed(P("0"), G(0)))
                        .subtract(SwissCheese::of_ball(Ball::open(P("0"), G(0))))
                        .unite(SwissCheese::of_point(P("0")));
    CHECK(s.contains(P("0")));
    CHECK(!s.contains(P("t")));
    CHECK(s.contains(P("1")));
    // canonical: the point reappears as a positive inside the hole
    CHECK(s.positive_balls().size() == 2);
  }
  SUBCASE("complement round trip and far flag") {
    SwissCheese s = SwissCheese::of_point(P("2"));
    SwissCheese c = s.complement();
    CHECK(!c.contains(P("2")));
    CHECK(c.contains(P("3")));
    CHECK(c.far_in());
    CHECK(c.complement() == s);
  }
}

TEST_CASE("normalization idempotence and membership oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-3, 4);
  std::uniform_int_distribution<long> den(1, 3);
  std::uniform_int_distribution<long> coeff(-3, 3);
  std::uniform_int_distribution<int> kind(0, 1);
  auto rand_ball = [&]() {
    Puiseux c = Puiseux::zero(Q());
    for (int i = 0; i < 2; ++i) {
      long k = coeff(rng);
      if (k != 0)
        c = c + Puiseux::monomial(KElem::of(Q(), Rational(k)), Rational(num(rng), den(rng)));
    }
    GammaValue r = G(num(rng), den(rng));
    return kind(rng) ? Ball::open(c, r) : Ball::closed(c, r);
  };
  for (int trial = 0; trial < 30; ++trial) {
    Ball b1 = rand_ball(), b2 = rand_ball(), b3 = rand_ball();
    SwissCheese a = SwissCheese::of_ball(b1).unite(SwissCheese::of_ball(b2));
    SwissCheese s = a.subtract(SwissCheese::of_ball(b3));
    CHECK(s == s.unite(s));
    CHECK(s == s.intersect(s));
    CHECK(s == s.complement().complement());
    // membership agrees with the boolean combination of the inputs
    for (int p = 0; p < 20; ++p) {
      Puiseux x = Puiseux::zero(Q());
      for (int i = 0; i < 2; ++i) {
        long k = coeff(rng);
        if (k != 0)
          x = x + Puiseux::monomial(KElem::of(Q(), Rational(k)), Rational(num(rng), den(rng)));
      }
      bool expect = (b1.contains(x) || b2.contains(x)) && !b3.contains(x);
      CHECK(s.contains(x) == expect);
    }
  }
}

TEST_CASE("positive closure and simplex grouping") {
  SUBCASE("open ball closes") {
    auto cl = positive_closure(SwissCheese::of_ball(Ball::open(P("t"), G(2))));
    REQUIRE(cl.size() == 1);
    CHECK(cl[0] == Ball::closed(P("t"), G(2)));
  }
  SUBCASE("thin annulus closes to the closed ball") {
    SwissCheese s = SwissCheese::of_ball(Ball::closed(P("0"), G(0)))
                        .subtract(SwissCheese::of_ball(Ball::open(P("0"), G(0))));
    auto cl = positive_closure(s);
    REQUIRE(cl.size() == 1);
    CHECK(cl[0] == Ball::closed(P("0"), G(0)));
  }
  SUBCASE("closed ball is its own closure") {
    auto cl = positive_closure(SwissCheese::of_ball(Ball::closed(P("1"), G(3))));
    CHECK(cl[0] == Ball::closed(P("1"), G(3)));
  }
  SUBCASE("grouping by radius and valuative center") {
    SwissCheese two = SwissCheese::of_ball(Ball::open(P("t"), G(2)))
                          .unite(SwissCheese::of_ball(Ball::open(P("-t"), G(2))));
    CHECK(simplex_grouping(two).size() == 1);
    SwissCheese mixed = SwissCheese::of_ball(Ball::open(P("1"), G(0)))
                            .unite(SwissCheese::of_ball(Ball::open(P("t"), G(1))));
    CHECK(simplex_grouping(mixed).size() == 2);
    SwissCheese pts = SwissCheese::of_point(P("0")).unite(SwissCheese::of_point(P("t")));
    CHECK(simplex_grouping(pts).size() == 2);  // vcr inf vs 1
  }
}

TEST_CASE("centered sets split their rv classes") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> resd(-9, 9);
  std::uniform_int_distribution<int> size(2, 6);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int k = size(rng);
    Rational gamma(num(rng), den(rng));
    std::vector<Puiseux> pts;
    while (static_cast<int>(pts.size()) < k) {
      long c = resd(rng);
      if (c == 0) continue;
      Puiseux x = Puiseux::monomial(KElem::of(Q(), Rational(c)), gamma);
      bool dup = false;
      for (const auto& p : pts)
        if ((p - x).is_exact_zero()) dup = true;
      if (!dup) pts.push_back(x);
    }
    Puiseux avg = average(pts);
    std::set<std::string> classes;
    for (const auto& p : pts) {
      Puiseux d = p - avg;
      classes.insert(d.is_exact_zero() ? "INF" : d.rv().to_string());
    }
    CHECK(classes.size() >= 2);
  }
}

TEST_CASE("average") {
  CHECK(average({P("t"), P("2*t"), P("-3*t")}).is_exact_zero());
  CHECK(average({P("1")}) == P("1"));
  CHECK(average({P("t"), P("t + t^3")}) == P("t + 1/2*t^3"));
}
