#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvkit/decompose.hpp"
#include "rvkit/errors.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }
Puiseux P(const std::string& text) { return parse_puiseux(Q(), text); }
GammaValue G(long n, long d = 1) { return GammaValue::finite(Rational(n, d)); }

DefinableSet1 D(const std::string& text, FieldPtr f = Q()) {
  return decompose1(parse_formula(f, text), "X", f);
}

// the probe oracle: cheese membership must match direct evaluation
void check_against_probes(const std::string& text, const DefinableSet1& d, size_t n = 200) {
  FPtr phi = parse_formula(d.cheese.field(), text);
  int agree = 0, total = 0;
  for (const auto& x : probe_points(d.cheese, d.cheese.field(), n, fnv_hash(text))) {
    Assignment a;
    a.vf["X"] = x;
    ++total;
    if (eval_qf(phi, a) == d.cheese.contains(x)) ++agree;
  }
  CHECK(agree == total);
  CHECK(total >= static_cast<int>(n));
}
}  // namespace

TEST_CASE("rv-ball literal") {
  DefinableSet1 d = D("rv(X) = [0;1]");
  CHECK(d.cheese.as_single_ball().value() == Ball::open(P("1"), G(0)));
  check_against_probes("rv(X) = [0;1]", d);
}

TEST_CASE("the worked example: two open balls of radius 2") {
  DefinableSet1 d = D("rv(X^2 - t^2) = [3;1]");
  auto comps = d.cheese.components();
  REQUIRE(comps.size() == 2);
  std::set<std::string> got;
  for (const auto& c : comps) {
    CHECK(c.holes.empty());
    got.insert(c.ball.to_string());
  }
  std::set<std::string> expected = {
      Ball::open(P("t + 1/2*t^2"), G(2)).to_string(),
      Ball::open(P("-t - 1/2*t^2"), G(2)).to_string(),
  };
  CHECK(got == expected);
  check_against_probes("rv(X^2 - t^2) = [3;1]", d);
}

TEST_CASE("vf literals give points and co-points") {
  DefinableSet1 d = D("X*(X - 1) = 0");
  REQUIRE(d.cheese.is_finite_union_of_points());
  CHECK(d.cheese.point_list().size() == 2);
  DefinableSet1 c = D("X - 2 != 0");
  CHECK(!c.cheese.contains(P("2")));
  CHECK(c.cheese.contains(P("2 + t")));
  CHECK(c.cheese.far_in());
}

TEST_CASE("membership edge: conjunction with a disequality") {
  DefinableSet1 d = D("rv(X) = [0;1] & X - 2 != 0");
  // 2 is not in the rv-ball of 1, so nothing is removed
  CHECK(d.cheese.as_single_ball().value() == Ball::open(P("1"), G(0)));
}

TEST_CASE("K-term literals") {
  SUBCASE("solvable residue condition") {
    DefinableSet1 d = D("rv(X)*[0;1] + rv(X - 1)*[0;1] = 0");
    CHECK(d.cheese.as_single_ball().value() == Ball::open(P("1/2"), G(0)));
    check_against_probes("rv(X)*[0;1] + rv(X - 1)*[0;1] = 0", d);
  }
  SUBCASE("empty solution") {
    DefinableSet1 d = D("rv(X)*[0;1] + rv(X)*[0;1] = 0");
    CHECK(d.cheese.is_empty());
  }
  SUBCASE("negated K-term keeps the definedness region") {
    std::string text = "rv(X)*[0;1] + rv(X - 1)*[0;1] != 0";
    DefinableSet1 d = D(text);
    // defined where v(x) = 0 and v(x-1) = 0; true away from residue 1/2
    CHECK(d.cheese.contains(P("3")));
    CHECK(!d.cheese.contains(P("1/2")));
    CHECK(!d.cheese.contains(P("t")));   // undefined, hence false
    CHECK(!d.cheese.contains(P("1")));   // second summand undefined
    check_against_probes(text, d);
  }
}

TEST_CASE("valuation comparisons") {
  DefinableSet1 d = D("rv(X^2 - t^2) <= [4;1]");
  check_against_probes("rv(X^2 - t^2) <= [4;1]", d);
  CHECK(d.cheese.contains(P("3*t")));       // v = 2
  CHECK(d.cheese.contains(P("t + t^3")));   // v(x^2 - t^2) = 4
  CHECK(!d.cheese.contains(P("t + t^4")));  // v = 5
  DefinableSet1 g = D("rv(X^2 - t^2) > [4;1]");
  CHECK(g.cheese.contains(P("t + t^4")));
  CHECK(g.cheese.contains(P("t")));  // v = inf is above everything
  check_against_probes("rv(X^2 - t^2) > [4;1]", g);
}

TEST_CASE("negative valuations and fractional levels") {
  DefinableSet1 d = D("rv(t*X^2) = rv(X)");
  // the class [-1;1] from 1 + 2v = v with matching residues, plus the point 0
  // where both sides are INF
  CHECK(d.cheese.contains(P("t^(-1)")));
  CHECK(d.cheese.contains(P("0")));
  CHECK(!d.cheese.contains(P("2*t^(-1)")));
  CHECK(!d.cheese.contains(P("1")));
  auto comps = d.cheese.components();
  REQUIRE(comps.size() == 2);
  check_against_probes("rv(t*X^2) = rv(X)", d);
  DefinableSet1 h = D("rv(X^2) <= rv(t^3)");
  CHECK(h.cheese.contains(P("t")));        // 2 <= 3
  CHECK(h.cheese.contains(P("t^(3/2)")));  // 3 <= 3
  CHECK(!h.cheese.contains(P("t^2")));     // 4 > 3
  check_against_probes("rv(X^2) <= rv(t^3)", h);
}

TEST_CASE("extension surfaces over the wrong field, resolves over the right one") {
  CHECK_THROWS_AS(D("X^2 - 2 = 0"), Error);
  FieldPtr f2 = NumberField::create({Rational(-2), Rational(0)});
  DefinableSet1 d = D("X^2 - 2 = 0", f2);
  REQUIRE(d.cheese.is_finite_union_of_points());
  CHECK(d.cheese.point_list().size() == 2);
  KElem y = KElem::generator(f2);
  CHECK(d.cheese.contains(Puiseux::constant(y)));
  CHECK(d.cheese.contains(Puiseux::constant(-y)));
  FPtr phi = parse_formula(f2, "X^2 - 2 = 0");
  for (const auto& x : probe_points(d.cheese, f2, 100, 5)) {
    Assignment a;
    a.vf["X"] = x;
    CHECK(eval_qf(phi, a) == d.cheese.contains(x));
  }
}

TEST_CASE("decide_exists") {
  CHECK(decide_exists(parse_formula(Q(), "rv(X^2 - t^2) = [3;1]"), "X", Q()));
  CHECK(!decide_exists(parse_formula(Q(), "X = 0 & X - 1 = 0"), "X", Q()));
  CHECK(decide_exists(parse_formula(Q(), "rv(X) = INF"), "X", Q()));
  // disjunction distributes over the decision
  FPtr a = parse_formula(Q(), "rv(X) = [0;1]");
  FPtr b = parse_formula(Q(), "X = 0 & X - 1 = 0");
  FPtr both = parse_formula(Q(), "rv(X) = [0;1] | (X = 0 & X - 1 = 0)");
  CHECK(decide_exists(both, "X", Q()) ==
        (decide_exists(a, "X", Q()) || decide_exists(b, "X", Q())));
}

TEST_CASE("centers of closed balls by root averaging") {
  SUBCASE("two balls around the square roots") {
    DefinableSet1 d = D("[8;1] <= rv(X^2 - t^2)");
    // v(x^2 - t^2) >= 8 <=> closed balls of radius 7 around the two roots
    auto centers = centers_closed(d);
    REQUIRE(centers.size() == 2);
    for (auto& [ball, center] : centers) {
      CHECK(ball.is_closed());
      CHECK(ball.radius() == G(7));
      CHECK(ball.contains(center));
      bool is_root = (center - P("t")).is_exact_zero() || (center + P("t")).is_exact_zero();
      CHECK(is_root);
    }
  }
  SUBCASE("single point from a linear equation") {
    DefinableSet1 d = D("X - 2 = 0");
    auto centers = centers_closed(d);
    REQUIRE(centers.size() == 1);
    CHECK((centers[0].second - P("2")).is_exact_zero());
  }
  SUBCASE("both roots in one ball average to its middle") {
    DefinableSet1 d = D("[2;1] <= rv(X^2 - t^2)");
    // v >= 2 merges both roots into the single ball closed(0, 1)
    auto centers = centers_closed(d);
    REQUIRE(centers.size() == 1);
    CHECK(centers[0].second.is_exact_zero());  // average of t and -t
  }
  SUBCASE("open components are rejected") {
    CHECK_THROWS_AS(centers_closed(D("rv(X) = [0;1]")), Error);
  }
}

TEST_CASE("rv_ball_center") {
  SUBCASE("ball inside the class of 1") {
    // open(1, 2) inside rv-ball of 1, defined by rv(X - 1) > [2;1] & rv(X) = [0;1]
    DefinableSet1 d = D("rv(X - 1) > [2;1] & rv(X) = [0;1]");
    Puiseux c = rv_ball_center(RvElem::unit(Rational(0), KElem::one(Q())), d);
    CHECK(Ball::rv_ball(RvElem::unit(Rational(0), KElem::one(Q()))).contains(c));
  }
  SUBCASE("a point is its own center") {
    DefinableSet1 d = D("X - t - t^3 = 0");
    Puiseux c = rv_ball_center(P("t").rv(), d);
    CHECK((c - P("t + t^3")).is_exact_zero());
  }
  SUBCASE("the full rv-ball is not proper") {
    DefinableSet1 d = D("rv(X) = [0;1]");
    CHECK_THROWS_AS(rv_ball_center(RvElem::unit(Rational(0), KElem::one(Q())), d), Error);
  }
}

TEST_CASE("approximate_outside") {
  SUBCASE("closed ball keeps the rv of every polynomial") {
    Ball gb = Ball::closed(P("1"), G(2));
    std::vector<VfPoly> polys = {vf_term_to_poly(parse_vf_term(Q(), "X"), "X", Q())};
    Puiseux dpt = approximate_outside(gb, polys);
    CHECK(!gb.contains(dpt));
    CHECK(dpt.rv() == P("1").rv());  // stays in the class
    CHECK(polys[0].eval(dpt).rv() == rv_on_ball(polys[0], gb));
  }
  SUBCASE("open ball keeps valuations") {
    Ball gb = Ball::open(P("t"), G(3));
    std::vector<VfPoly> polys = {vf_term_to_poly(parse_vf_term(Q(), "X - 2*t"), "X", Q())};
    Puiseux dpt = approximate_outside(gb, polys);
    CHECK(!gb.contains(dpt));
    CHECK(dpt.rv() == P("t").rv());
    CHECK(polys[0].eval(dpt).val() == polys[0].eval(gb.center()).val());
  }
  SUBCASE("root inside is rejected") {
    Ball gb = Ball::closed(P("1"), G(2));
    std::vector<VfPoly> polys = {vf_term_to_poly(parse_vf_term(Q(), "X - 1"), "X", Q())};
    CHECK_THROWS_AS(approximate_outside(gb, polys), Error);
  }
}

TEST_CASE("finite_set_rv_code") {
  SUBCASE("already separated at depth one") {
    RvCode c = finite_set_rv_code({{P("t")}, {P("2*t")}, {P("-3*t")}});
    CHECK(c.width == 1);
    std::set<std::string> got;
    for (auto& code : c.codes) got.insert(code[0].to_string());
    CHECK(got == std::set<std::string>{"[1;1]", "[1;2]", "[1;-3]"});
  }
  SUBCASE("pair split by centering") {
    RvCode c = finite_set_rv_code({{P("0")}, {P("t")}});
    REQUIRE(c.width == 1);
    std::set<std::string> got = {c.codes[0][0].to_string(), c.codes[1][0].to_string()};
    CHECK(got == std::set<std::string>{"[1;-1/2]", "[1;1/2]"});
  }
  SUBCASE("singleton gets the empty code") {
    RvCode c = finite_set_rv_code({{P("5")}});
    CHECK(c.width == 0);
  }
  SUBCASE("deep recursion stays injective") {
    std::vector<std::vector<Puiseux>> pts = {
        {P("t")}, {P("t + t^2")}, {P("t + t^2 + t^3")}, {P("2*t")}, {P("0")}};
    RvCode c = finite_set_rv_code(pts);
    for (size_t i = 0; i < c.codes.size(); ++i)
      for (size_t j = i + 1; j < c.codes.size(); ++j) CHECK(c.codes[i] != c.codes[j]);
  }
  SUBCASE("tuples code through fibers") {
    std::vector<std::vector<Puiseux>> pts = {
        {P("t"), P("1")}, {P("2*t"), P("1")}, {P("t"), P("2")}};
    RvCode c = finite_set_rv_code(pts);
    for (size_t i = 0; i < c.codes.size(); ++i)
      for (size_t j = i + 1; j < c.codes.size(); ++j) CHECK(c.codes[i] != c.codes[j]);
  }
}

TEST_CASE("provenance records the defining literals") {
  DefinableSet1 d = D("rv(X^2 - t^2) = [3;1]");
  REQUIRE(!d.provenance_polys.empty());
  bool found = false;
  for (const auto& p : d.provenance_polys)
    if (p.to_string().find("X^2") != std::string::npos) found = true;
  CHECK(found);
  CHECK(!d.ball_provenance.empty());
}
