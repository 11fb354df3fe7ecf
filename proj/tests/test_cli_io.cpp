#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rvkit/corpus.hpp"
#include "rvkit/errors.hpp"

using namespace rvkit;

TEST_CASE("field specs") {
  CHECK(parse_field_spec("Q")->is_rationals());
  FieldPtr f = parse_field_spec("y^2 - 2");
  CHECK(f->degree() == 2);
  KElem y = KElem::generator(f);
  CHECK(y * y == KElem::of(f, Rational(2)));
  CHECK_THROWS_AS(parse_field_spec("y^2 - 1"), Error);  // has a rational root
  CHECK_THROWS_AS(parse_field_spec("2*y^2 - 1"), Error);  // not monic
}

TEST_CASE("budget specs") {
  Budgets b = parse_budgets("newtonSteps=10,caseSplit=20,recursionDepth=5");
  CHECK(b.newton_steps == 10);
  CHECK(b.case_split == 20);
  CHECK(b.recursion_depth == 5);
  CHECK_THROWS_AS(parse_budgets("bogus=1"), Error);
}

TEST_CASE("ball and cheese JSON round trip") {
  FieldPtr q = NumberField::rationals();
  Ball b = Ball::open(parse_puiseux(q, "t + 1/2*t^2"), GammaValue::finite(Rational(2)));
  Json j = to_json(b);
  CHECK(j["kind"] == "open");
  CHECK(j["radius"] == "2");
  Ball back = ball_from_json(q, j);
  CHECK(back == b);
  SwissCheese s = SwissCheese::of_ball(Ball::closed(parse_puiseux(q, "0"), GammaValue::finite(Rational(0))))
                      .subtract(SwissCheese::of_ball(Ball::open(parse_puiseux(q, "0"),
                                                                GammaValue::finite(Rational(0)))));
  SwissCheese s2 = cheese_from_json(q, to_json(s));
  CHECK(s2 == s);
}

TEST_CASE("corpus has the required size and shapes") {
  CHECK(builtin_corpus().size() >= 25);
  CHECK(builtin_section_corpus().size() >= 20);
  // every literal shape appears: VF =, VF !=, RV =, RV !=, <=, >, K-terms, INF
  bool vf_eq = false, vf_ne = false, rv_eq = false, rv_ne = false, le = false, gt = false,
       kterm = false, inf = false;
  for (const auto& e : builtin_corpus()) {
    if (e.formula.find("= 0") != std::string::npos &&
        e.formula.find("rv") == std::string::npos)
      vf_eq = true;
    if (e.formula.find("!= 0") != std::string::npos &&
        e.formula.find("rv") == std::string::npos)
      vf_ne = true;
    if (e.formula.find("rv") != std::string::npos && e.formula.find(" = ") != std::string::npos)
      rv_eq = true;
    if (e.formula.find("!=") != std::string::npos && e.formula.find("rv") != std::string::npos)
      rv_ne = true;
    if (e.formula.find("<=") != std::string::npos) le = true;
    if (e.formula.find(" > ") != std::string::npos) gt = true;
    if (e.formula.find(" + rv") != std::string::npos) kterm = true;
    if (e.formula.find("INF") != std::string::npos) inf = true;
  }
  CHECK(vf_eq);
  CHECK(vf_ne);
  CHECK(rv_eq);
  CHECK(rv_ne);
  CHECK(le);
  CHECK(gt);
  CHECK(kterm);
  CHECK(inf);
}

TEST_CASE("corpus golden round trip and tamper detection") {
  std::string path = "test_corpus_golden.json";
  corpus_save(path);
  Json loaded = corpus_load(path);
  CHECK(loaded.size() == builtin_corpus().size());
  corpus_check(path);  // identical by construction
  // tamper with one expected record
  loaded[0]["expected"]["empty"] = !loaded[0]["expected"]["empty"].get<bool>();
  {
    std::ofstream out(path);
    out << loaded.dump(2) << "\n";
  }
  CHECK_THROWS_AS(corpus_check(path), Error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(corpus_load("does_not_exist.json"), Error);
}
