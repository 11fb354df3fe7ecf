#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvkit/errors.hpp"
#include "rvkit/pullback.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }
Puiseux P(const std::string& text) { return parse_puiseux(Q(), text); }
GammaValue G(long n, long d = 1) { return GammaValue::finite(Rational(n, d)); }

DefinableSet1 D(const std::string& text) {
  return decompose1(parse_formula(Q(), text), "X", Q());
}
}  // namespace

TEST_CASE("rv_hull") {
  FiberedSet fs = FiberedSet::of_set(SwissCheese::of_ball(Ball::open(P("1"), G(2))));
  FiberedSet hull = rv_hull(fs);
  REQUIRE(hull.concrete.size() == 1);
  CHECK(hull.concrete[0].fiber ==
        SwissCheese::of_ball(Ball::rv_ball(P("1").rv())));
  // a point pulls to itself: rv^{-1}(INF) = {0}
  FiberedSet zs = rv_hull(FiberedSet::of_set(SwissCheese::of_point(P("0"))));
  CHECK(zs.concrete[0].fiber == SwissCheese::of_point(P("0")));
}

TEST_CASE("canonical bijection splits by classes") {
  SUBCASE("a deep ball around zero becomes a family") {
    SwissCheese s = SwissCheese::of_ball(Ball::open(P("0"), G(2)));
    FiberedSet fb = canonical_bijection(FiberedSet::of_set(s));
    CHECK(fb.concrete.size() == 1);  // the zero point
    CHECK(fb.concrete[0].prefix.size() == 1);
    CHECK(fb.concrete[0].prefix[0].is_infinity());
    REQUIRE(fb.families.size() == 1);
    CHECK(fb.families[0].family.lower.value().first == Rational(2));
    CHECK(fb.families[0].family.lower.value().second == true);
  }
  SUBCASE("a point lands in its class") {
    FiberedSet fb = canonical_bijection(FiberedSet::of_set(SwissCheese::of_point(P("t"))));
    REQUIRE(fb.concrete.size() == 1);
    CHECK(fb.concrete[0].prefix[0] == P("t").rv());
  }
  SUBCASE("two balls split into two fibers") {
    SwissCheese two = SwissCheese::of_ball(Ball::open(P("1"), G(1)))
                          .unite(SwissCheese::of_ball(Ball::open(P("t"), G(2))));
    FiberedSet fb = canonical_bijection(FiberedSet::of_set(two));
    CHECK(fb.concrete.size() == 2);
  }
}

TEST_CASE("verify_pullback") {
  SUBCASE("an rv-ball verifies") {
    RvPullbackCert c = verify_pullback(
        FiberedSet::of_set(SwissCheese::of_ball(Ball::rv_ball(P("t").rv()))));
    CHECK(c.verified);
  }
  SUBCASE("a proper subball does not") {
    RvPullbackCert c = verify_pullback(
        FiberedSet::of_set(SwissCheese::of_ball(Ball::open(P("t"), G(2)))));
    CHECK(!c.verified);
    CHECK(!c.witness.empty());
  }
  SUBCASE("the zero point verifies") {
    RvPullbackCert c = verify_pullback(FiberedSet::of_set(SwissCheese::of_point(P("0"))));
    CHECK(c.verified);
  }
}

TEST_CASE("to_rv_pullback on the example finite set") {
  SwissCheese two = SwissCheese::of_point(P("t")).unite(SwissCheese::of_point(P("t + t^3")));
  PullbackResult pr = to_rv_pullback(FiberedSet::of_set(two));
  CHECK(pr.cert.verified);
  CHECK(pr.bijection.length() == 2);
  auto pieces = classify_preimages(pr.bijection, pr);
  int points = 0;
  std::set<std::string> got;
  for (const auto& piece : pieces)
    if (piece.is_point) {
      ++points;
      got.insert(piece.point.to_string());
    }
  CHECK(points == 2);
  CHECK(got == std::set<std::string>{P("t").to_string(), P("t + t^3").to_string()});
}

TEST_CASE("to_rv_pullback on a proper ball") {
  SwissCheese ball = SwissCheese::of_ball(Ball::open(P("t + t^2"), G(2)));
  PullbackResult pr = to_rv_pullback(FiberedSet::of_set(ball));
  CHECK(pr.cert.verified);
  CHECK(pr.bijection.length() >= 1);
  auto pieces = classify_preimages(pr.bijection, pr);
  // every preimage is a point or an open ball inside the original set
  for (const auto& piece : pieces) {
    if (piece.is_point) CHECK(ball.contains(piece.point));
    else {
      CHECK(piece.ball.is_open());
      CHECK(ball.contains(piece.ball.center()));
    }
  }
}

TEST_CASE("to_rv_pullback on an already saturated set is length zero") {
  SwissCheese s = SwissCheese::of_ball(Ball::rv_ball(P("t").rv()));
  PullbackResult pr = to_rv_pullback(FiberedSet::of_set(s));
  CHECK(pr.cert.verified);
  CHECK(pr.bijection.length() == 0);
}

TEST_CASE("punctured fiber recursion") {
  // thin annulus with a ball removed: closed(t,1) \ open(t,1) is a union of
  // classes; instead puncture inside one class: open(t,1) \ closed(t, 3)
  SwissCheese s = SwissCheese::of_ball(Ball::open(P("t"), G(1)))
                      .subtract(SwissCheese::of_ball(Ball::closed(P("t"), G(3))));
  PullbackResult pr = to_rv_pullback(FiberedSet::of_set(s));
  CHECK(pr.cert.verified);
  CHECK(pr.bijection.length() >= 1);
}

TEST_CASE("centripetal focus must stay in the class") {
  FiberedSet fb = canonical_bijection(FiberedSet::of_set(SwissCheese::of_point(P("t + t^2"))));
  REQUIRE(fb.concrete.size() == 1);
  CentripetalStep bad;
  bad.locus.push_back(fb.concrete[0].prefix);
  bad.focus.push_back(P("1"));  // not in the class of t
  bad.used_root_average.push_back(false);
  CHECK_THROWS_AS(centripetal(fb, bad), Error);
}

TEST_CASE("special bijection invertibility on sampled points") {
  // forward/backward through the recorded steps on concrete points
  DefinableSet1 d = D("rv(X - 1) > [2;1] & rv(X) = [0;1]");  // open(1, 2)
  FiberedSet fs = FiberedSet::of_set(d.cheese);
  fs.provenance = d.provenance_polys;
  PullbackResult pr = to_rv_pullback(fs);
  CHECK(pr.cert.verified);
  // the preimages of the image polydiscs reassemble the set
  auto pieces = classify_preimages(pr.bijection, pr);
  int inside = 0;
  for (const auto& piece : pieces) {
    if (piece.is_point) {
      CHECK(d.cheese.contains(piece.point));
      ++inside;
    } else {
      CHECK(d.cheese.contains(piece.ball.center()));
      ++inside;
    }
  }
  CHECK(inside >= 1);
}

TEST_CASE("b1 witness fibers are points or open balls") {
  for (const std::string& text :
       {"rv(X - 1) > [2;1] & rv(X) = [0;1]", "X - 5 = 0",
        "rv(X) <= [0;1] & rv(X) > [0;1] | rv(X) = [0;1]"}) {
    DefinableSet1 d = D(text);
    if (d.cheese.is_empty()) continue;
    B1Witness w = b1_witness(d);
    CHECK(w.pullback.cert.verified);
    for (const auto& fiber : w.fibers) {
      if (!fiber.is_point) {
        CHECK(fiber.ball.is_open());
        CHECK(fiber.ball.radius().is_finite());
      }
    }
  }
}

TEST_CASE("b3 witness for the square map") {
  FieldPtr f3 = NumberField::create({Rational(-3), Rational(0)});  // y^2 - 3
  auto poly = [&](const std::string& text) {
    return vf_term_to_poly(parse_vf_term(f3, text), "X", f3);
  };
  SUBCASE("away from the critical point: one injective piece") {
    DefinableSet1 d = decompose1(parse_formula(f3, "rv(X - 1) > [1;1]"), "X", f3);
    B3Witness w = b3_witness_poly(poly("X^2"), d);
    bool has_injective_ball = false;
    for (const auto& piece : w.pieces)
      if (piece.kind == B3Piece::Kind::BallPiece && piece.injective) has_injective_ball = true;
    CHECK(has_injective_ball);
    // the certificate survives pair sampling
    Ball b = Ball::open(parse_puiseux(f3, "1"), G(1));
    VfPoly F = poly("X^2");
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) {
        Puiseux x = b.center() + Puiseux::monomial(KElem::of(f3, Rational(i)), Rational(2));
        Puiseux y = b.center() + Puiseux::monomial(KElem::of(f3, Rational(j)), Rational(2));
        CHECK(!(F.eval(x) - F.eval(y)).is_exact_zero());
      }
  }
  SUBCASE("around zero the fibers are classes and the point") {
    DefinableSet1 d = decompose1(parse_formula(f3, "rv(X) > [2;1]"), "X", f3);
    B3Witness w = b3_witness_poly(poly("X^2"), d);
    bool has_family = false, has_point = false;
    for (const auto& piece : w.pieces) {
      if (piece.kind == B3Piece::Kind::ClassFamily && piece.injective) has_family = true;
      if (piece.kind == B3Piece::Kind::Point) has_point = true;
    }
    CHECK(has_family);
    CHECK(has_point);
  }
  SUBCASE("cubic with moving critical points") {
    DefinableSet1 d = decompose1(parse_formula(f3, "rv(X) <= [2;1]"), "X", f3);
    B3Witness w = b3_witness_poly(poly("X^3 - t*X"), d);
    CHECK(!w.pieces.empty());
    // sample a family piece: x != y in one class map to different values
    VfPoly F = poly("X^3 - t*X");
    for (const auto& piece : w.pieces) {
      if (piece.kind != B3Piece::Kind::ClassFamily) continue;
      for (const auto& cls : piece.family.sample(f3, 2, 31)) {
        if (cls.is_infinity()) continue;
        Puiseux c = piece.center + section(SectionKind::RvSection, cls);
        Puiseux x = c + Puiseux::monomial(KElem::of(f3, Rational(1)), cls.gamma() + Rational(1));
        Puiseux y = c + Puiseux::monomial(KElem::of(f3, Rational(2)), cls.gamma() + Rational(1));
        CHECK(!(F.eval(x) - F.eval(y)).is_exact_zero());
      }
    }
  }
  SUBCASE("constant polynomial gives constant pieces") {
    DefinableSet1 d = decompose1(parse_formula(f3, "rv(X) = [0;1]"), "X", f3);
    B3Witness w = b3_witness_poly(poly("7"), d);
    for (const auto& piece : w.pieces) CHECK(!piece.injective);
  }
}
