#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvkit/decompose.hpp"
#include "rvkit/errors.hpp"
#include "rvkit/formula.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }
}

TEST_CASE("parse and print round trips") {
  for (const std::string& text : {
           "rv(X) = [0;1]",
           "sn(rv(X - 1)) - (X - 1) = 0 & rv(X) = [0;1]",
           "rv(X)*Y^2 <= [1;1]",
           "X^2 - 3*X + 2 = 0",
           "rv(X^2 - t^2) = [3;1]",
           "rv(X)*[0;1] + rv(X - 1)*[0;1] = 0",
           "rv(X) = INF",
           "rv(X) > [0;1] | rv(X - 1) != [1;2]",
       }) {
    FPtr f = parse_formula(Q(), text);
    std::string printed = print_formula(f);
    FPtr again = parse_formula(Q(), printed);
    CHECK(print_formula(again) == printed);  // parse ∘ print = identity on ASTs
  }
}

TEST_CASE("parser rejects sort errors with positions") {
  CHECK_THROWS_AS(parse_formula(Q(), "rv(Y) = [0;1]"), Error);       // RV var in VF slot
  CHECK_THROWS_AS(parse_formula(Q(), "sn(X) - X = 0"), Error);       // sn needs an RV argument
  CHECK_THROWS_AS(parse_formula(Q(), "X + = 0"), Error);
  CHECK_THROWS_AS(parse_formula(Q(), "rv(X) = [0;0]"), Error);       // zero residue
  // K-terms are barred from inequalities
  CHECK_THROWS_AS(parse_formula(Q(), "rv(X)*[0;1] + rv(X)*[0;1] <= [0;1]"), Error);
}

TEST_CASE("unicode product sign parses") {
  FPtr a = parse_formula(Q(), "rv(X)\xC2\xB7[0;2] = [1;1]");
  FPtr b = parse_formula(Q(), "rv(X)*[0;2] = [1;1]");
  CHECK(print_formula(a) == print_formula(b));
}

TEST_CASE("to_dnf") {
  SUBCASE("de morgan and polarity flips") {
    FPtr f = parse_formula(Q(), "!(rv(X) = [0;1] & X - 1 = 0)");
    FPtr d = to_dnf(f);
    auto clauses = dnf_clauses(d);
    REQUIRE(clauses.size() == 2);
    std::set<std::string> lits;
    for (auto& c : clauses)
      for (auto& l : c) lits.insert(l.to_string());
    CHECK(lits.count("rv(X) != [0;1]"));
    CHECK(lits.count("X - 1 != 0"));
  }
  SUBCASE("inequality flips") {
    FPtr f = parse_formula(Q(), "!(rv(X) <= [1;1])");
    FPtr d = to_dnf(f);
    CHECK(print_formula(d) == "rv(X) > [1;1]");
  }
  SUBCASE("idempotence up to canonical order") {
    FPtr f = parse_formula(Q(), "rv(X) = [0;1] | X = 0");
    CHECK(print_formula(to_dnf(f)) == print_formula(to_dnf(to_dnf(f))));
  }
  SUBCASE("eval is preserved on random assignments") {
    FPtr f = parse_formula(
        Q(), "!( (rv(X) = [0;1] | rv(X - 1) > [0;1]) & rv(X)*[0;1] + rv(X - 1)*[0;1] != 0 )");
    FPtr d = to_dnf(f);
    for (const auto& x : probe_points(SwissCheese::whole(Q()), Q(), 50, 99)) {
      Assignment a;
      a.vf["X"] = x;
      CHECK(eval_qf(f, a) == eval_qf(d, a));
    }
  }
}

TEST_CASE("complexity clauses") {
  auto C = [](const std::string& text) { return complexity(parse_formula(Q(), text)); };
  CHECK(C("sn(rv(X)) - X = 0") == 1);
  CHECK(C("rv(sn(rv(X)) + 1) = [0;1]") == 1);
  CHECK(C("sn(rv(sn(rv(X)))) - X = 0") == 2);
  CHECK(C("rv(X) = [0;1]") == 0);
  CHECK(C("X^2 - 1 = 0") == 0);
}

TEST_CASE("lower_complexity") {
  SUBCASE("single replacement to complexity zero") {
    FPtr f = parse_formula(Q(), "sn(rv(X^2 - 1)) - X = 0");
    Lowered low = lower_complexity(f);
    CHECK(complexity(low.formula) == 0);
    REQUIRE(low.new_vars.size() == 1);
    std::string printed = print_formula(low.formula);
    CHECK(printed.find("sn(Z1)") != std::string::npos);
    CHECK(printed.find("rv(X^2 - 1) = Z1") != std::string::npos);
  }
  SUBCASE("two distinct inner terms get two variables") {
    FPtr f = parse_formula(Q(), "sn(rv(X)) - sn(rv(X - 1)) = 0");
    Lowered low = lower_complexity(f);
    CHECK(low.new_vars.size() == 2);
    CHECK(complexity(low.formula) == 0);
  }
  SUBCASE("complexity zero input raises") {
    CHECK_THROWS_AS(lower_complexity(parse_formula(Q(), "rv(X) = [0;1]")), Error);
  }
  SUBCASE("strict decrease on nested terms") {
    FPtr f = parse_formula(Q(), "sn(rv(sn(rv(X)))) - X = 0");
    Lowered low = lower_complexity(f);
    CHECK(complexity(low.formula) < 2);
  }
}

TEST_CASE("substitute") {
  FPtr f = parse_formula(Q(), "rv(X - X2) = [1;1]");
  Assignment a;
  a.vf["X2"] = parse_puiseux(Q(), "t");
  FPtr g = substitute(f, a);
  VarInventory inv = variables(g);
  CHECK(inv.vf_vars.count("X2") == 0);
  CHECK(inv.vf_vars.count("X") == 1);
  // type errors: an RV value into a VF slot
  Assignment bad;
  bad.rv["X"] = Rv0::of(RvElem::infinity(Q()));
  CHECK_THROWS_AS(substitute(f, bad), Error);
}

TEST_CASE("eval_qf on closed formulas") {
  auto tv = [&](const std::string& text, SectionKind kind = SectionKind::None) {
    return eval_qf(parse_formula(Q(), text), kind);
  };
  CHECK(tv("rv(t + t^3) = [1;1]"));
  CHECK(tv("rv(1) <= rv(t)"));
  CHECK(tv("sn(rv(t)) - 0 = 0", SectionKind::KSection));   // the K section kills vrv > 0
  CHECK(tv("sn(rv(t)) - t = 0", SectionKind::RvSection));  // the monomial section keeps it
  // undefined K-terms are false under both polarities
  CHECK(!tv("rv(1)*[0;1] + rv(t)*[0;1] = 0"));
  CHECK(!tv("rv(1)*[0;1] + rv(t)*[0;1] != 0"));
  // comparisons touching the K zero are false either way
  CHECK(!tv("0 <= [0;1]"));
  CHECK(!tv("0 > [0;1]"));
}
