#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

#include "rvkit/errors.hpp"
#include "rvkit/sections.hpp"

namespace rvkit {

std::string TermOutcome::to_string() const {
  switch (tag) {
    case Tag::UndefinedOnBall: return "undefined";
    case Tag::ConstantOnBall: return "constant " + value.to_string();
    case Tag::MonomialOnBall:
      return "monomial " + b.to_string() + " * sn(rv(x - " + center.to_string() + "))^" +
             std::to_string(l);
  }
  return "?";
}

Rational VolumetricPartition::eval(const Puiseux& a) const {
  for (const auto& r : roots) {
    Puiseux d = a - r.as_exact();
    if (d.is_exact_zero() || (d.known_nonzero() && d.val() > GammaValue::finite(beta)))
      return beta;
    if (!d.known_nonzero()) return beta;  // inside up to the representation depth
  }
  std::optional<Rational> best;
  if (!a.is_exact_zero() && a.known_nonzero()) best = a.val().value();
  for (const auto& r : roots) {
    Puiseux d = a - r.as_exact();
    Rational c = d.val().value();
    if (!best || c > *best) best = c;
  }
  return best ? *best : Rational(0);
}

bool VolumetricPartition::in_special_region(const Puiseux& a) const {
  for (const auto& r : roots) {
    Puiseux d = a - r.as_exact();
    if (d.is_exact_zero() || (d.known_nonzero() && d.val() > GammaValue::finite(beta)) ||
        !d.known_nonzero())
      return true;
  }
  return false;
}

namespace {

// the lemma shape: a product of constants and rv-applies, with at most one
// K-term factor
struct SigmaShape {
  Rv0 outer_coeff;                                  // folded constants
  std::vector<std::pair<VfPoly, int>> outer_rvs;    // rv(F)^e factors
  std::vector<std::pair<Rv0, std::vector<std::pair<VfPoly, int>>>> ksum;  // summands
  bool has_ksum = false;
};

void flatten_sigma(const RvPtr& t, const std::string& var, const FieldPtr& f, SigmaShape* s,
                   int exponent) {
  switch (t->kind) {
    case RvTerm::Kind::Const: {
      Rv0 c = t->cval;
      if (exponent != 1 && !c.is_k_zero() && !c.rv().is_infinity())
        c = Rv0::of(c.rv().pow(exponent));
      auto folded = rv0_mul(s->outer_coeff, c);
      if (!folded) fail(ErrorKind::ShapeMismatch, "undefined constant product in the sn-term");
      s->outer_coeff = *folded;
      return;
    }
    case RvTerm::Kind::Var:
      fail(ErrorKind::ShapeMismatch, "free RV variable " + t->var + " in an sn-term");
    case RvTerm::Kind::RvApply: {
      VfPoly p = vf_term_to_poly(t->vf_arg, var, f);
      if (p.is_zero()) {
        s->outer_coeff = Rv0::of(RvElem::infinity(f));
        return;
      }
      if (p.degree() == 0) {
        auto folded = rv0_mul(s->outer_coeff, Rv0::of(p.coeff(0).rv().pow(exponent)));
        if (!folded) fail(ErrorKind::ShapeMismatch, "undefined constant product");
        s->outer_coeff = *folded;
        return;
      }
      s->outer_rvs.push_back({p, exponent});
      return;
    }
    case RvTerm::Kind::Mul:
      flatten_sigma(t->a, var, f, s, exponent);
      flatten_sigma(t->b, var, f, s, exponent);
      return;
    case RvTerm::Kind::Pow:
      flatten_sigma(t->a, var, f, s, exponent * t->exponent);
      return;
    case RvTerm::Kind::KSum: {
      if (s->has_ksum || exponent != 1)
        fail(ErrorKind::ShapeMismatch, "sn-term with more than one K-term factor");
      s->has_ksum = true;
      for (const auto& summand : t->summands) {
        SigmaShape tmp;
        tmp.outer_coeff = Rv0::of(RvElem::unit(Rational(0), KElem::one(f)));
        flatten_sigma(summand, var, f, &tmp, 1);
        if (tmp.has_ksum) fail(ErrorKind::ShapeMismatch, "nested K-terms");
        for (auto& [p, e] : tmp.outer_rvs)
          if (e <= 0) fail(ErrorKind::ShapeMismatch, "nonpositive rv power in a K-term");
        if (tmp.outer_coeff.is_k_zero()) continue;  // zero summands vanish
        s->ksum.push_back({tmp.outer_coeff, tmp.outer_rvs});
      }
      return;
    }
  }
}

}  // namespace

VolpartResult volpart_term(const RvPtr& sigma, const std::string& var, SectionKind kind,
                           const FieldPtr& f, const Budgets& budgets) {
  if (kind == SectionKind::None)
    fail(ErrorKind::ShapeMismatch, "volumetric partition needs a section");
  SigmaShape shape;
  shape.outer_coeff = Rv0::of(RvElem::unit(Rational(0), KElem::one(f)));
  flatten_sigma(sigma, var, f, &shape, 1);
  if (kind == SectionKind::KSection && !shape.outer_rvs.empty() && shape.has_ksum)
    fail(ErrorKind::ShapeMismatch,
         "under the K section the sn-term must be a plain sum of rv(F_i)·r_i");
  // collect polynomials with coefficients and multiplicity data
  struct PolyInfo {
    VfPoly poly;
    Rational coeff_vrv;  // -vrv threshold for the root bound
    bool from_ksum;
  };
  std::vector<PolyInfo> infos;
  for (const auto& [p, e] : shape.outer_rvs) {
    if (e <= 0) fail(ErrorKind::ShapeMismatch, "nonpositive rv power in the sn-term");
    infos.push_back({p, Rational(0), false});
  }
  for (const auto& [coeff, rvs] : shape.ksum) {
    if (coeff.is_infinity())
      fail(ErrorKind::ShapeMismatch, "infinite coefficient in a K-term");
    for (const auto& [p, e] : rvs)
      infos.push_back({p, coeff.rv().gamma(), true});
  }
  // roots and the separating radius
  struct RootInfo {
    Puiseux x;
    Rational gamma_bound;
  };
  std::vector<RootInfo> roots;
  Rational prec(16);
  for (const auto& info : infos) {
    if (info.poly.degree() < 1) continue;
    for (const auto& r : puiseux_roots(info.poly, prec, budgets.newton_steps)) {
      // v(F(a')) > -vrv(r_i) on o(root, γ):
      // v(lc) + Σ_{ρ≠a} v(a-ρ) m_ρ + m_a γ >= -vrv(coeff)
      Rational C = info.poly.leading().val().value();
      int m_a = r.multiplicity;
      for (const auto& r2 : puiseux_roots(info.poly, prec, budgets.newton_steps)) {
        Puiseux d = r.value.as_exact() - r2.value.as_exact();
        if (d.is_exact_zero() || !d.known_nonzero()) continue;
        C += d.val().value() * Rational(r2.multiplicity);
      }
      Rational bound = (-info.coeff_vrv - C) / Rational(m_a);
      roots.push_back({r.value, bound});
    }
  }
  // uniform β: max of the per-root bounds joined with pairwise separations + 1
  Rational beta(0);
  for (const auto& r : roots) beta = rvkit::max(beta, r.gamma_bound);
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      Puiseux d = roots[i].x.as_exact() - roots[j].x.as_exact();
      if (d.is_exact_zero() || !d.known_nonzero()) continue;
      beta = rvkit::max(beta, d.val().value() + Rational(1));
    }
  // also keep β at least above every root's own valuation so the special
  // balls stay inside rv-balls
  for (const auto& r : roots)
    if (r.x.known_nonzero()) beta = rvkit::max(beta, r.x.val().value() + Rational(1));
  VolpartResult out;
  out.partition.field = f;
  out.partition.beta = beta;
  std::vector<Puiseux> seen;
  for (const auto& r : roots) {
    bool dup = false;
    for (const auto& s : seen)
      if ((s.as_exact() - r.x.as_exact()).is_exact_zero()) dup = true;
    if (!dup) seen.push_back(r.x);
  }
  out.partition.roots = seen;
  // evaluate the sn-term at a point (RvEval through the model)
  auto sigma_value = [sigma, var, kind](const Puiseux& a) -> std::optional<Rv0> {
    Assignment asg;
    asg.vf[var] = a.as_exact();
    return eval_rv_term(sigma, asg, kind);
  };
  auto outcome_at = [sigma_value, kind, f](const Puiseux& a) {
    TermOutcome oc;
    auto v = sigma_value(a);
    if (!v) {
      oc.tag = TermOutcome::Tag::UndefinedOnBall;
      return oc;
    }
    oc.tag = TermOutcome::Tag::ConstantOnBall;
    oc.value = section(kind, *v);
    return oc;
  };
  // outcomes on the special balls
  for (const auto& root : out.partition.roots) {
    TermOutcome oc;
    // which polynomials vanish here?
    bool outer_root = false, ksum_root = false;
    int outer_mult = 0;
    for (const auto& [p, e] : shape.outer_rvs) {
      Puiseux val = p.eval(root.as_exact());
      if (val.is_exact_zero() || !val.known_nonzero()) {
        outer_root = true;
        // multiplicity of the root
        VfPoly d = p;
        int m = 0;
        while (true) {
          Puiseux dv = d.eval(root.as_exact());
          if (dv.is_exact_zero() || !dv.known_nonzero()) {
            d = d.derivative();
            ++m;
            if (d.is_zero()) break;
            continue;
          }
          break;
        }
        outer_mult += m * e;
      }
    }
    for (const auto& [coeff, rvs] : shape.ksum)
      for (const auto& [p, e] : rvs) {
        Puiseux val = p.eval(root.as_exact());
        if (val.is_exact_zero() || !val.known_nonzero()) ksum_root = true;
      }
    if (ksum_root) {
      // a K-term summand keeps positive value on the whole ball
      if (shape.ksum.size() > 1 || !shape.outer_rvs.empty() || shape.has_ksum) {
        bool k1 = shape.has_ksum && shape.ksum.size() == 1 && shape.outer_rvs.empty();
        if (k1 && kind == SectionKind::KSection) {
          oc.tag = TermOutcome::Tag::ConstantOnBall;
          oc.value = Puiseux::zero(f);
        } else if (shape.ksum.size() > 1) {
          oc.tag = TermOutcome::Tag::UndefinedOnBall;
        } else {
          oc.tag = TermOutcome::Tag::ConstantOnBall;
          oc.value = Puiseux::zero(f);
        }
      }
    } else if (outer_root) {
      if (kind == SectionKind::KSection) {
        // value has positive vrv on the ball: the section kills it
        oc.tag = TermOutcome::Tag::ConstantOnBall;
        oc.value = Puiseux::zero(f);
      } else {
        // rv(F(a')) = rv(d)·rv(a'-root)^l with d from the stable factors
        std::optional<Rv0> rest;  // the constant part: coeff · other factors at the root
        rest = shape.outer_coeff;
        int l = 0;
        for (const auto& [p, e] : shape.outer_rvs) {
          // factor the root out of p
          VfPoly q = p;
          Puiseux val = q.eval(root.as_exact());
          if (val.is_exact_zero() || !val.known_nonzero()) {
            // divide by (X - root) repeatedly via synthetic evaluation of
            // derivatives: rv(p(a')) = rv(p^{(m)}(root)/m!)·rv(a'-root)^m
            VfPoly d = p;
            int m = 0;
            Puiseux lead = Puiseux::zero(f);
            Rational factorial(1);
            while (true) {
              Puiseux dv = d.eval(root.as_exact());
              if (!(dv.is_exact_zero() || !dv.known_nonzero())) { lead = dv; break; }
              d = d.derivative();
              ++m;
              factorial = factorial * Rational(m);
              if (d.is_zero()) fail(ErrorKind::ShapeMismatch, "zero polynomial in sn-term");
            }
            lead = lead.scale(KElem::of(f, Rational(1) / factorial));
            l += m * e;
            if (rest)
              rest = rv0_mul(*rest, Rv0::of(lead.rv().pow(e)));
          } else {
            if (rest) rest = rv0_mul(*rest, Rv0::of(val.rv().pow(e)));
          }
        }
        // the K-term factor value at the root (constant on the ball)
        if (shape.has_ksum && rest) {
          Assignment asg;
          asg.vf[var] = root.as_exact();
          std::vector<Rv0> vals;
          bool undef = false;
          for (const auto& [coeff, rvs] : shape.ksum) {
            Rv0 sv = coeff;
            for (const auto& [p, e] : rvs) {
              Puiseux pv = p.eval(root.as_exact());
              auto m = rv0_mul(sv, Rv0::of(pv.rv().pow(e)));
              if (!m) { undef = true; break; }
              sv = *m;
            }
            if (undef) break;
            vals.push_back(sv);
          }
          if (undef) rest = std::nullopt;
          else {
            auto total = k_term_sum(vals);
            if (!total) rest = std::nullopt;
            else rest = rv0_mul(*rest, *total);
          }
        }
        if (!rest) {
          oc.tag = TermOutcome::Tag::UndefinedOnBall;
        } else if (rest->is_k_zero()) {
          oc.tag = TermOutcome::Tag::ConstantOnBall;
          oc.value = Puiseux::zero(f);
        } else {
          oc.tag = TermOutcome::Tag::MonomialOnBall;
          oc.center = root;
          oc.b = section(kind, *rest);
          oc.l = l;
        }
      }
    } else {
      oc = outcome_at(root);
    }
    out.special_outcomes.push_back(oc);
  }
  out.generic_outcome = outcome_at;
  return out;
}

VolumetricCheck is_volumetric(const PartitionFn& p, const SwissCheese& domain, int samples,
                              uint64_t seed) {
  VolumetricCheck out;
  const FieldPtr& f = domain.field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> res(1, 9);
  std::uniform_int_distribution<long> dnum(1, 8);
  std::vector<Puiseux> points = probe_points(domain, f, samples, seed ^ 0x9e3779b97f4a7c15ull);
  int done = 0;
  for (const auto& a : points) {
    if (done >= samples) break;
    if (!domain.contains(a)) continue;
    ++done;
    std::optional<Rational> pa = p(a);
    if (!pa) continue;  // p(a) = ∞: the ball is empty and constancy vacuous
    for (int k = 0; k < 3; ++k) {
      Rational delta(dnum(rng), 3);
      Puiseux a2 = a + Puiseux::monomial(KElem::of(f, Rational(res(rng))), *pa + delta);
      if (!domain.contains(a2)) continue;
      std::optional<Rational> pa2 = p(a2);
      if (!pa2 || *pa2 != *pa) {
        out.ok = false;
        out.witness_a = a;
        out.witness_a2 = a2;
        out.p_a = *pa;
        if (pa2) out.p_a2 = *pa2;
        return out;
      }
    }
  }
  return out;
}

// ---------------- the reduction ----------------

namespace {

// distinct complexity-1 sn-terms (σ contains rv, |σ| = 0)
void collect_sn_args(const FPtr& f, std::vector<RvPtr>* out);
void collect_sn_vf(const VfPtr& t, std::vector<RvPtr>* out);
void collect_sn_rv(const RvPtr& t, std::vector<RvPtr>* out) {
  switch (t->kind) {
    case RvTerm::Kind::Const:
    case RvTerm::Kind::Var: return;
    case RvTerm::Kind::RvApply: collect_sn_vf(t->vf_arg, out); return;
    case RvTerm::Kind::Mul: collect_sn_rv(t->a, out); collect_sn_rv(t->b, out); return;
    case RvTerm::Kind::Pow: collect_sn_rv(t->a, out); return;
    case RvTerm::Kind::KSum:
      for (const auto& s : t->summands) collect_sn_rv(s, out);
      return;
  }
}
void collect_sn_vf(const VfPtr& t, std::vector<RvPtr>* out) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
    case VfTerm::Kind::Var: return;
    case VfTerm::Kind::Sn: {
      if (complexity(t) == 1) {
        std::string key = print_rv_term(t->rv_arg);
        for (const auto& seen : *out)
          if (print_rv_term(seen) == key) return;
        out->push_back(t->rv_arg);
        return;
      }
      collect_sn_rv(t->rv_arg, out);
      return;
    }
    case VfTerm::Kind::Add:
    case VfTerm::Kind::Sub:
    case VfTerm::Kind::Mul: collect_sn_vf(t->a, out); collect_sn_vf(t->b, out); return;
    case VfTerm::Kind::Neg:
    case VfTerm::Kind::Pow: collect_sn_vf(t->a, out); return;
  }
}
void collect_sn_args(const FPtr& f, std::vector<RvPtr>* out) {
  if (f->kind == QfFormula::Kind::Lit) {
    const Literal& l = f->lit;
    if (l.vf) collect_sn_vf(l.vf, out);
    if (l.lhs) collect_sn_rv(l.lhs, out);
    if (l.rhs) collect_sn_rv(l.rhs, out);
    return;
  }
  for (const auto& k : f->kids) collect_sn_args(k, out);
}

// replace sn(σ_i) occurrences by VF variables
VfPtr replace_sn_vf(const VfPtr& t, const std::vector<std::pair<std::string, std::string>>& map);
RvPtr replace_sn_rv(const RvPtr& t, const std::vector<std::pair<std::string, std::string>>& map) {
  switch (t->kind) {
    case RvTerm::Kind::Const:
    case RvTerm::Kind::Var: return t;
    case RvTerm::Kind::RvApply: return RvTerm::rv(replace_sn_vf(t->vf_arg, map));
    case RvTerm::Kind::Mul:
      return RvTerm::mul(replace_sn_rv(t->a, map), replace_sn_rv(t->b, map));
    case RvTerm::Kind::Pow: return RvTerm::pow(replace_sn_rv(t->a, map), t->exponent);
    case RvTerm::Kind::KSum: {
      std::vector<RvPtr> ss;
      for (const auto& s : t->summands) ss.push_back(replace_sn_rv(s, map));
      return RvTerm::ksum(std::move(ss));
    }
  }
  return t;
}
VfPtr replace_sn_vf(const VfPtr& t, const std::vector<std::pair<std::string, std::string>>& map) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
    case VfTerm::Kind::Var: return t;
    case VfTerm::Kind::Sn: {
      std::string key = print_rv_term(t->rv_arg);
      for (const auto& [k, name] : map)
        if (k == key) return VfTerm::variable(name);
      return VfTerm::sn(replace_sn_rv(t->rv_arg, map));
    }
    case VfTerm::Kind::Add: return VfTerm::add(replace_sn_vf(t->a, map), replace_sn_vf(t->b, map));
    case VfTerm::Kind::Sub: return VfTerm::sub(replace_sn_vf(t->a, map), replace_sn_vf(t->b, map));
    case VfTerm::Kind::Mul: return VfTerm::mul(replace_sn_vf(t->a, map), replace_sn_vf(t->b, map));
    case VfTerm::Kind::Neg: return VfTerm::neg(replace_sn_vf(t->a, map));
    case VfTerm::Kind::Pow: return VfTerm::pow(replace_sn_vf(t->a, map), t->exponent);
  }
  return t;
}
FPtr replace_sn(const FPtr& f, const std::vector<std::pair<std::string, std::string>>& map) {
  if (f->kind == QfFormula::Kind::Lit) {
    Literal l = f->lit;
    if (l.vf) l.vf = replace_sn_vf(l.vf, map);
    if (l.lhs) l.lhs = replace_sn_rv(l.lhs, map);
    if (l.rhs) l.rhs = replace_sn_rv(l.rhs, map);
    return QfFormula::literal(std::move(l));
  }
  std::vector<FPtr> kids;
  for (const auto& k : f->kids) kids.push_back(replace_sn(k, map));
  auto g = std::make_shared<QfFormula>();
  g->kind = f->kind;
  g->kids = std::move(kids);
  return g;
}

bool vf_contains_var(const VfPtr& t, const std::string& name);
bool rv_contains_var(const RvPtr& t, const std::string& name) {
  switch (t->kind) {
    case RvTerm::Kind::Const: return false;
    case RvTerm::Kind::Var: return false;
    case RvTerm::Kind::RvApply: return vf_contains_var(t->vf_arg, name);
    case RvTerm::Kind::Mul: return rv_contains_var(t->a, name) || rv_contains_var(t->b, name);
    case RvTerm::Kind::Pow: return rv_contains_var(t->a, name);
    case RvTerm::Kind::KSum:
      for (const auto& s : t->summands)
        if (rv_contains_var(s, name)) return true;
      return false;
  }
  return false;
}
bool vf_contains_var(const VfPtr& t, const std::string& name) {
  switch (t->kind) {
    case VfTerm::Kind::Const: return false;
    case VfTerm::Kind::Var: return t->var == name;
    case VfTerm::Kind::Sn: return rv_contains_var(t->rv_arg, name);
    case VfTerm::Kind::Add:
    case VfTerm::Kind::Sub:
    case VfTerm::Kind::Mul:
      return vf_contains_var(t->a, name) || vf_contains_var(t->b, name);
    case VfTerm::Kind::Neg:
    case VfTerm::Kind::Pow: return vf_contains_var(t->a, name);
  }
  return false;
}

// replace literals mentioning any of the given VF parameters by a false
// literal (used on the undefined fiber)
FPtr falsify_literals_with(const FPtr& f, const std::vector<std::string>& params,
                           const FieldPtr& field) {
  if (f->kind == QfFormula::Kind::Lit) {
    const Literal& l = f->lit;
    bool touches = false;
    for (const auto& name : params) {
      if (l.vf && vf_contains_var(l.vf, name)) touches = true;
      if (l.lhs && rv_contains_var(l.lhs, name)) touches = true;
      if (l.rhs && rv_contains_var(l.rhs, name)) touches = true;
    }
    if (!touches) return f;
    Literal falsum;
    falsum.rel = Literal::Rel::VfEq;
    falsum.vf = VfTerm::constant(Puiseux::one(field));
    return QfFormula::literal(falsum);
  }
  std::vector<FPtr> kids;
  for (const auto& k : f->kids) kids.push_back(falsify_literals_with(k, params, field));
  auto g = std::make_shared<QfFormula>();
  g->kind = f->kind;
  g->kids = std::move(kids);
  return g;
}

}  // namespace

Reduction reduce_with_sections(const FPtr& formula, const std::string& var, SectionKind kind,
                               const FieldPtr& f, const Budgets& budgets) {
  if (kind == SectionKind::None)
    fail(ErrorKind::ShapeMismatch, "reduction needs a section");
  Reduction red;
  red.original = formula;
  red.var = var;
  red.kind = kind;
  red.field = f;
  red.budgets = budgets;
  FPtr cur = formula;
  int fresh = 1;
  int initial = complexity(formula);
  int guard = 0;
  while (complexity(cur) >= 1) {
    if (++guard > initial + 1)
      fail(ErrorKind::RecursionBudgetExceeded, "reduction failed to lower complexity");
    ReduceStage stage;
    collect_sn_args(cur, &stage.sn_args);
    if (stage.sn_args.empty())
      fail(ErrorKind::ShapeMismatch, "positive complexity without complexity-1 sn-terms");
    // the lemma shape: closed terms in the one variable (and the parameters
    // of earlier stages); free RV variables have no volumetric partition
    for (const auto& s : stage.sn_args) {
      VarInventory inv = variables(QfFormula::literal(
          Literal{Literal::Rel::RvEq, nullptr, s, RvTerm::constant(Rv0::k_zero(f))}));
      if (!inv.rv_vars.empty())
        fail(ErrorKind::ShapeMismatch,
             "sn-term argument has the free RV variable " + *inv.rv_vars.begin());
    }
    std::vector<std::pair<std::string, std::string>> repl;
    VarInventory inv = variables(cur);
    for (const auto& s : stage.sn_args) {
      std::string name;
      do {
        name = "X" + std::to_string(900 + fresh++);
      } while (inv.vf_vars.count(name));
      stage.vf_params.push_back(name);
      repl.push_back({print_rv_term(s), name});
    }
    stage.reduced = replace_sn(cur, repl);
    int before = complexity(cur), after = complexity(stage.reduced);
    if (!(after < before))
      fail(ErrorKind::RecursionBudgetExceeded, "complexity did not decrease");
    red.stages.push_back(stage);
    cur = stage.reduced;
  }
  return red;
}

std::vector<Rv0> Reduction::pi(const Puiseux& a) const {
  std::vector<Rv0> out;
  Assignment asg;
  asg.vf[var] = a.as_exact();
  for (const auto& stage : stages) {
    bool stage_defined = true;
    std::vector<Rv0> vals;
    for (const auto& s : stage.sn_args) {
      auto v = eval_rv_term(s, asg, kind);
      if (!v) { stage_defined = false; break; }
      vals.push_back(*v);
    }
    if (!stage_defined) {
      for (size_t i = 0; i <= stage.sn_args.size(); ++i)
        out.push_back(Rv0::of(RvElem::infinity(field)));
      return out;  // later stages are opaque on the undefined fiber
    }
    for (size_t i = 0; i < vals.size(); ++i) {
      out.push_back(vals[i]);
      asg.vf[stage.vf_params[i]] = section(kind, vals[i]);
    }
    out.push_back(Rv0::of(RvElem::unit(Rational(0), KElem::one(field))));
  }
  return out;
}

FPtr Reduction::fiber_formula(const Puiseux& a) const {
  Assignment asg;
  asg.vf[var] = a.as_exact();
  FPtr cur = original;
  for (const auto& stage : stages) {
    bool stage_defined = true;
    std::vector<Rv0> vals;
    for (const auto& s : stage.sn_args) {
      auto v = eval_rv_term(s, asg, kind);
      if (!v) { stage_defined = false; break; }
      vals.push_back(*v);
    }
    if (!stage_defined) {
      // undefined fiber: the stage parameters poison their literals
      std::vector<std::pair<std::string, std::string>> repl;
      for (size_t i = 0; i < stage.sn_args.size(); ++i)
        repl.push_back({print_rv_term(stage.sn_args[i]), stage.vf_params[i]});
      FPtr replaced = replace_sn(cur, repl);
      return falsify_literals_with(replaced, stage.vf_params, field);
    }
    std::vector<std::pair<std::string, std::string>> repl;
    for (size_t i = 0; i < stage.sn_args.size(); ++i)
      repl.push_back({print_rv_term(stage.sn_args[i]), stage.vf_params[i]});
    FPtr replaced = replace_sn(cur, repl);
    // substitute the section parameters and pin the fiber
    Assignment sub;
    std::vector<FPtr> conj;
    for (size_t i = 0; i < vals.size(); ++i) {
      sub.vf[stage.vf_params[i]] = section(kind, vals[i]);
      asg.vf[stage.vf_params[i]] = section(kind, vals[i]);
      Literal pin;
      pin.rel = Literal::Rel::RvEq;
      pin.lhs = stage.sn_args[i];
      pin.rhs = RvTerm::constant(vals[i]);
      conj.push_back(QfFormula::literal(pin));
    }
    conj.insert(conj.begin(), substitute(replaced, sub));
    cur = QfFormula::conj(std::move(conj));
  }
  return cur;
}

Rational Reduction::p(const Puiseux& a) const {
  Assignment eval_asg;   // includes the variable, for stage values
  Assignment param_asg;  // parameters only, keeping the variable free
  eval_asg.vf[var] = a.as_exact();
  Rational best(0);
  bool first = true;
  for (const auto& stage : stages) {
    for (const auto& s : stage.sn_args) {
      RvPtr sub = substitute(s, param_asg);
      // the partition of this σ with the stage parameters substituted
      VolpartResult vr = volpart_term(sub, var, kind, field, budgets);
      Rational pv = vr.partition.eval(a);
      if (first || pv > best) best = pv;
      first = false;
    }
    for (size_t i = 0; i < stage.sn_args.size(); ++i) {
      auto v = eval_rv_term(stage.sn_args[i], eval_asg, kind);
      if (!v) return best;  // undefined fiber: the partition so far decides
      Puiseux param = section(kind, *v);
      eval_asg.vf[stage.vf_params[i]] = param;
      param_asg.vf[stage.vf_params[i]] = param;
    }
  }
  return best;
}

LocalCMin local_cmin_decompose(const FPtr& formula, const std::string& var, const FieldPtr& f,
                               int samples, uint64_t seed, const Budgets& budgets) {
  LocalCMin out{reduce_with_sections(formula, var, SectionKind::KSection, f, budgets), {}};
  std::vector<Puiseux> pts =
      probe_points(SwissCheese::whole(f), f, static_cast<size_t>(samples) * 2, seed);
  // include the natural members of the distinguishing-style sets
  pts.push_back(Puiseux::one(f));
  int done = 0;
  for (const auto& a : pts) {
    if (done >= samples) break;
    ++done;
    LocalSample s{a, out.reduction.p(a), false, SwissCheese::empty_set(f)};
    FPtr fiber = out.reduction.fiber_formula(a);
    DefinableSet1 dec = decompose1(fiber, var, f, budgets);
    Ball local_ball = Ball::open(a.as_exact(), GammaValue::finite(s.p));
    s.local = dec.cheese.intersect(SwissCheese::of_ball(local_ball));
    Assignment asg;
    asg.vf[var] = a.as_exact();
    s.member = eval_qf(formula, asg, SectionKind::KSection);
    out.samples.push_back(std::move(s));
  }
  return out;
}

FPtr distinguishing_formula(const FieldPtr& f) {
  return parse_formula(f, "sn(rv(X - 1)) - (X - 1) = 0 & rv(X) = [0;1]");
}

ContrastReport dag_local_cmin_counterexample(const FieldPtr& f, int member_samples,
                                             int radius_probes, const Budgets& budgets) {
  ContrastReport rep;
  FPtr phi = distinguishing_formula(f);
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> res(1, 9);
  std::uniform_int_distribution<long> num(1, 12);
  std::uniform_int_distribution<long> den(1, 4);
  // members 1 + sn(t), vrv(t) > 0, satisfy the formula under the RV section
  rep.dag_members_verified = true;
  for (int i = 0; i < member_samples; ++i) {
    Rational g(num(rng), den(rng));
    RvElem t = RvElem::unit(g, KElem::of(f, Rational(res(rng))));
    Puiseux x = Puiseux::one(f) + section(SectionKind::RvSection, t);
    Assignment asg;
    asg.vf["X"] = x;
    if (!eval_qf(phi, asg, SectionKind::RvSection)) {
      rep.dag_members_verified = false;
      rep.evidence.push_back("member check failed at t = " + t.to_string());
    }
    ++rep.member_samples;
  }
  // every probed ball around the member 1 + t contains a non-member
  rep.dag_balls_all_punctured = true;
  Puiseux a = Puiseux::one(f) + Puiseux::t(f);
  for (int k = 2; k < 2 + radius_probes; ++k) {
    // x = 1 + t + t^k is in o(a, k - 1/2) but is not of the form 1 + sn(t)
    Puiseux x = a + Puiseux::monomial(KElem::one(f), Rational(k));
    Assignment asg;
    asg.vf["X"] = x;
    bool member = eval_qf(phi, asg, SectionKind::RvSection);
    ++rep.ball_probes;
    if (member) {
      rep.dag_balls_all_punctured = false;
      rep.evidence.push_back("unexpected member at radius " + std::to_string(k));
    } else {
      rep.evidence.push_back("ball o(1 + t, " + std::to_string(k) +
                             " - 1/2) contains the non-member 1 + t + t^" + std::to_string(k));
    }
  }
  // the control run: under the K section the same formula is the point one
  LocalCMin control = local_cmin_decompose(phi, "X", f, 4, 7, budgets);
  FPtr fiber = control.reduction.fiber_formula(Puiseux::one(f));
  DefinableSet1 dec = decompose1(fiber, "X", f, budgets);
  auto pt = dec.cheese.as_single_point();
  rep.ddag_singleton_verified = pt.has_value() && (*pt - Puiseux::one(f)).is_exact_zero();
  if (pt) rep.ddag_point = *pt;
  return rep;
}

}  // namespace rvkit
