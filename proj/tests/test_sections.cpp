#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvkit/errors.hpp"
#include <random>

#include "rvkit/sections.hpp"

using namespace rvkit;

namespace {
FieldPtr Q() { return NumberField::rationals(); }
Puiseux P(const std::string& text) { return parse_puiseux(Q(), text); }

RvPtr sigma(const std::string& formula_with_sn) {
  // parse "sn(<term>) - 0 = 0" and pull out the rv argument
  FPtr f = parse_formula(Q(), "sn(" + formula_with_sn + ") - 0 = 0");
  const VfPtr& lhs = f->lit.vf;
  // lhs is Sub(Sn(arg), 0)
  return lhs->a->rv_arg;
}
}  // namespace

TEST_CASE("volpart for rv(X) under the K section") {
  VolpartResult vr = volpart_term(sigma("rv(X)*[0;1]"), "X", SectionKind::KSection, Q());
  // generic p(a) = v(a)
  CHECK(vr.partition.eval(P("t^2")) == Rational(2));
  CHECK(vr.partition.eval(P("3 + t")) == Rational(0));
  CHECK(vr.partition.eval(P("t^(-2)")) == Rational(-2));
  // around the root 0 the outcome is the constant 0
  REQUIRE(vr.partition.roots.size() == 1);
  CHECK(vr.special_outcomes[0].tag == TermOutcome::Tag::ConstantOnBall);
  CHECK(vr.special_outcomes[0].value.is_exact_zero());
  // generic outcomes: residue when v = 0, zero otherwise
  TermOutcome at_three = vr.generic_outcome(P("3 + t"));
  CHECK(at_three.tag == TermOutcome::Tag::ConstantOnBall);
  CHECK(at_three.value == P("3"));
  TermOutcome at_t = vr.generic_outcome(P("t + t^2"));
  CHECK(at_t.value.is_exact_zero());
}

TEST_CASE("volpart for rv(X) under the full section has the monomial outcome") {
  VolpartResult vr = volpart_term(sigma("rv(X)*[0;1]"), "X", SectionKind::RvSection, Q());
  REQUIRE(vr.partition.roots.size() == 1);
  const TermOutcome& oc = vr.special_outcomes[0];
  CHECK(oc.tag == TermOutcome::Tag::MonomialOnBall);
  CHECK(oc.l == 1);
  // sn(σ(a')) = b · sn(rv(a' - 0))^1 with b = 1 on the root ball
  Rational beta = vr.partition.beta;
  Puiseux a2 = Puiseux::monomial(KElem::of(Q(), Rational(3)), beta + Rational(1));
  Assignment asg;
  asg.vf["X"] = a2;
  auto v = eval_rv_term(sigma("rv(X)*[0;1]"), asg, SectionKind::RvSection);
  REQUIRE(v.has_value());
  Puiseux lhs = section(SectionKind::RvSection, *v);
  Puiseux rhs = oc.b * section(SectionKind::RvSection, (a2 - oc.center).rv());
  CHECK(lhs == rhs);
}

TEST_CASE("volpart certificates hold on sampled points") {
  auto term = sigma("rv(X)*[0;1] + rv(X - 1)*[0;-1]");
  VolpartResult vr = volpart_term(term, "X", SectionKind::KSection, Q());
  // regions around the roots 0 and 1
  CHECK(vr.partition.roots.size() == 2);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> c(1, 9);
  for (size_t i = 0; i < vr.partition.roots.size(); ++i) {
    const Puiseux& root = vr.partition.roots[i];
    const TermOutcome& oc = vr.special_outcomes[i];
    for (int k = 0; k < 10; ++k) {
      Puiseux a2 = root + Puiseux::monomial(KElem::of(Q(), Rational(c(rng))),
                                            vr.partition.beta + Rational(c(rng)));
      Assignment asg;
      asg.vf["X"] = a2;
      auto v = eval_rv_term(term, asg, SectionKind::KSection);
      if (oc.tag == TermOutcome::Tag::UndefinedOnBall) {
        CHECK(!v.has_value());
      } else if (oc.tag == TermOutcome::Tag::ConstantOnBall) {
        REQUIRE(v.has_value());
        CHECK(section(SectionKind::KSection, *v) == oc.value);
      }
    }
  }
}

TEST_CASE("is_volumetric accepts the valuation and rejects its double") {
  auto val = [](const Puiseux& a) {
    return a.is_exact_zero() ? Rational(1000) : a.val().value();
  };
  VolumetricCheck ok = is_volumetric(val, SwissCheese::whole(Q()), 100, 3);
  CHECK(ok.ok);
  // p(a) = 2 v(a) is not volumetric: a = t^(-1), a' = a + (term of exp -3/2)
  auto dbl = [](const Puiseux& a) {
    return a.is_exact_zero() ? Rational(1000) : a.val().value() * Rational(2);
  };
  Puiseux a = P("t^(-1)");
  Puiseux a2 = a + Puiseux::monomial(KElem::one(Q()), Rational(-3, 2));
  CHECK(dbl(a) != dbl(a2));        // the definition fails at this witness
  CHECK((a2 - a).val() > GammaValue::finite(dbl(a)));  // a' is inside o(a, p(a))
  // constant maps are volumetric
  auto cst = [](const Puiseux&) { return Rational(0); };
  CHECK(is_volumetric(cst, SwissCheese::whole(Q()), 100, 4).ok);
}

TEST_CASE("reduce_with_sections is sound pointwise") {
  for (const std::string& text : {
           "sn(rv(X)) - X = 0",
           "sn(rv(X^2 - 1)) - X = 0",
           "sn(rv(X - 1)) - (X - 1) = 0 & rv(X) = [0;1]",
           "sn(rv(sn(rv(X)))) - X = 0",
       }) {
    FPtr phi = parse_formula(Q(), text);
    Reduction red = reduce_with_sections(phi, "X", SectionKind::KSection, Q());
    // complexity strictly decreases across the stages
    int prev = complexity(phi);
    for (const auto& stage : red.stages) {
      int cur = complexity(stage.reduced);
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev == 0);
    for (const auto& x : probe_points(SwissCheese::whole(Q()), Q(), 60, fnv_hash(text))) {
      Assignment a;
      a.vf["X"] = x;
      bool direct = eval_qf(phi, a, SectionKind::KSection);
      bool reduced = eval_qf(red.fiber_formula(x), a, SectionKind::None);
      CHECK(direct == reduced);
    }
  }
}

TEST_CASE("the reduction partition is volumetric") {
  FPtr phi = parse_formula(Q(), "sn(rv(X - 1)) - (X - 1) = 0 & rv(X) = [0;1]");
  Reduction red = reduce_with_sections(phi, "X", SectionKind::KSection, Q());
  auto p = [&red](const Puiseux& a) { return red.p(a); };
  CHECK(is_volumetric(p, SwissCheese::whole(Q()), 100, 8).ok);
}

TEST_CASE("local C-minimality under the K section") {
  FPtr phi = distinguishing_formula(Q());
  LocalCMin lc = local_cmin_decompose(phi, "X", Q(), 10, 21);
  // the fiber through 1 decomposes to exactly the singleton {1}
  FPtr fiber = lc.reduction.fiber_formula(Puiseux::one(Q()));
  DefinableSet1 dec = decompose1(fiber, "X", Q());
  auto pt = dec.cheese.as_single_point();
  REQUIRE(pt.has_value());
  CHECK((*pt - Puiseux::one(Q())).is_exact_zero());
  // each sampled local piece is a (possibly empty) boolean combination that
  // agrees with direct evaluation at its base point
  for (const auto& s : lc.samples)
    CHECK(s.local.contains(s.a) == s.member);
}

TEST_CASE("the contrast report") {
  ContrastReport rep = dag_local_cmin_counterexample(Q(), 25, 4);
  CHECK(rep.dag_members_verified);
  CHECK(rep.dag_balls_all_punctured);
  CHECK(rep.ddag_singleton_verified);
  REQUIRE(rep.ddag_point.has_value());
  CHECK((*rep.ddag_point - Puiseux::one(Q())).is_exact_zero());
  CHECK(rep.member_samples >= 25);
  CHECK(rep.ball_probes >= 4);
}

TEST_CASE("shape mismatches are reported") {
  // a free RV variable inside the sn-term has no lemma shape
  FPtr phi = parse_formula(Q(), "sn(rv(X)*Y1) - X = 0");
  CHECK_THROWS_AS(reduce_with_sections(phi, "X", SectionKind::KSection, Q()), Error);
}
