#include "rvkit/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "rvkit/errors.hpp"

namespace rvkit {

VfPtr VfTerm::constant(Puiseux c) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Const;
  t->cval = std::move(c);
  return t;
}
VfPtr VfTerm::variable(std::string name) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Var;
  t->var = std::move(name);
  return t;
}
VfPtr VfTerm::sn(RvPtr arg) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Sn;
  t->rv_arg = std::move(arg);
  return t;
}
VfPtr VfTerm::add(VfPtr x, VfPtr y) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Add;
  t->a = std::move(x); t->b = std::move(y);
  return t;
}
VfPtr VfTerm::sub(VfPtr x, VfPtr y) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Sub;
  t->a = std::move(x); t->b = std::move(y);
  return t;
}
VfPtr VfTerm::mul(VfPtr x, VfPtr y) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Mul;
  t->a = std::move(x); t->b = std::move(y);
  return t;
}
VfPtr VfTerm::neg(VfPtr x) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Neg;
  t->a = std::move(x);
  return t;
}
VfPtr VfTerm::pow(VfPtr x, int e) {
  auto t = std::make_shared<VfTerm>();
  t->kind = Kind::Pow;
  t->a = std::move(x);
  t->exponent = e;
  return t;
}

RvPtr RvTerm::constant(Rv0 c) {
  auto t = std::make_shared<RvTerm>();
  t->kind = Kind::Const;
  t->cval = std::move(c);
  return t;
}
RvPtr RvTerm::variable(std::string name) {
  auto t = std::make_shared<RvTerm>();
  t->kind = Kind::Var;
  t->var = std::move(name);
  return t;
}
RvPtr RvTerm::rv(VfPtr arg) {
  auto t = std::make_shared<RvTerm>();
  t->kind = Kind::RvApply;
  t->vf_arg = std::move(arg);
  return t;
}
RvPtr RvTerm::mul(RvPtr x, RvPtr y) {
  auto t = std::make_shared<RvTerm>();
  t->kind = Kind::Mul;
  t->a = std::move(x); t->b = std::move(y);
  return t;
}
RvPtr RvTerm::pow(RvPtr x, int e) {
  auto t = std::make_shared<RvTerm>();
  t->kind = Kind::Pow;
  t->a = std::move(x);
  t->exponent = e;
  return t;
}
RvPtr RvTerm::ksum(std::vector<RvPtr> summands) {
  if (summands.size() < 2)
    fail(ErrorKind::TypeError, "K-term needs more than one summand");
  auto t = std::make_shared<RvTerm>();
  t->kind = Kind::KSum;
  t->summands = std::move(summands);
  return t;
}

Literal Literal::flip() const {
  Literal l = *this;
  switch (rel) {
    case Rel::VfEq: l.rel = Rel::VfNe; break;
    case Rel::VfNe: l.rel = Rel::VfEq; break;
    case Rel::RvEq: l.rel = Rel::RvNe; break;
    case Rel::RvNe: l.rel = Rel::RvEq; break;
    case Rel::RvLe: l.rel = Rel::RvGt; break;
    case Rel::RvGt: l.rel = Rel::RvLe; break;
  }
  return l;
}

FPtr QfFormula::literal(Literal l) {
  auto f = std::make_shared<QfFormula>();
  f->kind = Kind::Lit;
  f->lit = std::move(l);
  return f;
}
FPtr QfFormula::conj(std::vector<FPtr> kids) {
  if (kids.size() == 1) return kids[0];
  auto f = std::make_shared<QfFormula>();
  f->kind = Kind::And;
  f->kids = std::move(kids);
  return f;
}
FPtr QfFormula::disj(std::vector<FPtr> kids) {
  if (kids.size() == 1) return kids[0];
  auto f = std::make_shared<QfFormula>();
  f->kind = Kind::Or;
  f->kids = std::move(kids);
  return f;
}
FPtr QfFormula::negate(FPtr g) {
  auto f = std::make_shared<QfFormula>();
  f->kind = Kind::Not;
  f->kids = {std::move(g)};
  return f;
}

// --- printing --------------------------------------------------------------

namespace {

std::string print_vf(const VfPtr& t, int parent_prec);
std::string print_rv(const RvPtr& t, int parent_prec);

// precedence: 0 add/sub, 1 mul, 2 atom
std::string print_vf(const VfPtr& t, int parent_prec) {
  std::string s;
  int prec = 2;
  switch (t->kind) {
    case VfTerm::Kind::Const: {
      s = t->cval.to_string();
      if (s.find(' ') != std::string::npos || s.find('+') != std::string::npos ||
          (s.find('-') != std::string::npos && s.rfind('-') > 0))
        prec = 0;
      break;
    }
    case VfTerm::Kind::Var: s = t->var; break;
    case VfTerm::Kind::Sn: s = "sn(" + print_rv(t->rv_arg, 0) + ")"; break;
    case VfTerm::Kind::Add:
      s = print_vf(t->a, 0) + " + " + print_vf(t->b, 1);
      prec = 0;
      break;
    case VfTerm::Kind::Sub:
      s = print_vf(t->a, 0) + " - " + print_vf(t->b, 1);
      prec = 0;
      break;
    case VfTerm::Kind::Mul:
      s = print_vf(t->a, 1) + "*" + print_vf(t->b, 1);
      prec = 1;
      break;
    case VfTerm::Kind::Neg:
      s = "-" + print_vf(t->a, 1);
      prec = 0;
      break;
    case VfTerm::Kind::Pow:
      s = print_vf(t->a, 2) + "^" + std::to_string(t->exponent);
      break;
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

std::string print_rv(const RvPtr& t, int parent_prec) {
  std::string s;
  int prec = 2;
  switch (t->kind) {
    case RvTerm::Kind::Const:
      s = t->cval.is_k_zero() ? "0" : t->cval.to_string();
      break;
    case RvTerm::Kind::Var: s = t->var; break;
    case RvTerm::Kind::RvApply: s = "rv(" + print_vf(t->vf_arg, 0) + ")"; break;
    case RvTerm::Kind::Mul:
      s = print_rv(t->a, 1) + "*" + print_rv(t->b, 1);
      prec = 1;
      break;
    case RvTerm::Kind::Pow:
      s = print_rv(t->a, 2) + "^" +
          (t->exponent < 0 ? "(" + std::to_string(t->exponent) + ")" : std::to_string(t->exponent));
      break;
    case RvTerm::Kind::KSum: {
      std::ostringstream os;
      for (size_t i = 0; i < t->summands.size(); ++i) {
        if (i) os << " + ";
        os << print_rv(t->summands[i], 1);
      }
      s = os.str();
      prec = 0;
      break;
    }
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print_vf_term(const VfPtr& t) { return print_vf(t, 0); }
std::string print_rv_term(const RvPtr& t) { return print_rv(t, 0); }

std::string Literal::to_string() const {
  switch (rel) {
    case Rel::VfEq: return print_vf_term(vf) + " = 0";
    case Rel::VfNe: return print_vf_term(vf) + " != 0";
    case Rel::RvEq: return print_rv_term(lhs) + " = " + print_rv_term(rhs);
    case Rel::RvNe: return print_rv_term(lhs) + " != " + print_rv_term(rhs);
    case Rel::RvLe: return print_rv_term(lhs) + " <= " + print_rv_term(rhs);
    case Rel::RvGt: return print_rv_term(lhs) + " > " + print_rv_term(rhs);
  }
  return "?";
}

std::string print_formula(const FPtr& f) {
  switch (f->kind) {
    case QfFormula::Kind::Lit: return f->lit.to_string();
    case QfFormula::Kind::Not: return "!(" + print_formula(f->kids[0]) + ")";
    case QfFormula::Kind::And: {
      std::ostringstream os;
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << " & ";
        const FPtr& k = f->kids[i];
        bool paren = k->kind == QfFormula::Kind::Or;
        os << (paren ? "(" : "") << print_formula(k) << (paren ? ")" : "");
      }
      return os.str();
    }
    case QfFormula::Kind::Or: {
      std::ostringstream os;
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << " | ";
        os << print_formula(f->kids[i]);
      }
      return os.str();
    }
  }
  return "?";
}

// --- variables ---------------------------------------------------------------

namespace {
void vars_vf(const VfPtr& t, VarInventory* inv);
void vars_rv(const RvPtr& t, VarInventory* inv) {
  switch (t->kind) {
    case RvTerm::Kind::Const: break;
    case RvTerm::Kind::Var: inv->rv_vars.insert(t->var); break;
    case RvTerm::Kind::RvApply: vars_vf(t->vf_arg, inv); break;
    case RvTerm::Kind::Mul: vars_rv(t->a, inv); vars_rv(t->b, inv); break;
    case RvTerm::Kind::Pow: vars_rv(t->a, inv); break;
    case RvTerm::Kind::KSum:
      for (const auto& s : t->summands) vars_rv(s, inv);
      break;
  }
}
void vars_vf(const VfPtr& t, VarInventory* inv) {
  switch (t->kind) {
    case VfTerm::Kind::Const: break;
    case VfTerm::Kind::Var: inv->vf_vars.insert(t->var); break;
    case VfTerm::Kind::Sn: vars_rv(t->rv_arg, inv); break;
    case VfTerm::Kind::Add:
    case VfTerm::Kind::Sub:
    case VfTerm::Kind::Mul: vars_vf(t->a, inv); vars_vf(t->b, inv); break;
    case VfTerm::Kind::Neg:
    case VfTerm::Kind::Pow: vars_vf(t->a, inv); break;
  }
}
}  // namespace

VarInventory variables(const FPtr& f) {
  VarInventory inv;
  if (f->kind == QfFormula::Kind::Lit) {
    const Literal& l = f->lit;
    if (l.vf) vars_vf(l.vf, &inv);
    if (l.lhs) vars_rv(l.lhs, &inv);
    if (l.rhs) vars_rv(l.rhs, &inv);
    return inv;
  }
  for (const auto& k : f->kids) {
    VarInventory sub = variables(k);
    inv.vf_vars.insert(sub.vf_vars.begin(), sub.vf_vars.end());
    inv.rv_vars.insert(sub.rv_vars.begin(), sub.rv_vars.end());
  }
  return inv;
}

// --- DNF ---------------------------------------------------------------------

namespace {

// negation-normal form with polarity flips at the literals
FPtr to_nnf(const FPtr& f, bool negate) {
  switch (f->kind) {
    case QfFormula::Kind::Lit:
      return QfFormula::literal(negate ? f->lit.flip() : f->lit);
    case QfFormula::Kind::Not:
      return to_nnf(f->kids[0], !negate);
    case QfFormula::Kind::And:
    case QfFormula::Kind::Or: {
      bool is_and = (f->kind == QfFormula::Kind::And) != negate;
      std::vector<FPtr> kids;
      for (const auto& k : f->kids) kids.push_back(to_nnf(k, negate));
      return is_and ? QfFormula::conj(std::move(kids)) : QfFormula::disj(std::move(kids));
    }
  }
  fail(ErrorKind::TypeError, "malformed formula");
}

void clause_product(const std::vector<std::vector<std::vector<Literal>>>& kid_clauses,
                    size_t idx, std::vector<Literal>* current,
                    std::vector<std::vector<Literal>>* out) {
  if (idx == kid_clauses.size()) {
    out->push_back(*current);
    return;
  }
  for (const auto& clause : kid_clauses[idx]) {
    size_t mark = current->size();
    current->insert(current->end(), clause.begin(), clause.end());
    clause_product(kid_clauses, idx + 1, current, out);
    current->resize(mark);
  }
}

std::vector<std::vector<Literal>> clauses_of_nnf(const FPtr& f) {
  switch (f->kind) {
    case QfFormula::Kind::Lit:
      return {{f->lit}};
    case QfFormula::Kind::Or: {
      std::vector<std::vector<Literal>> out;
      for (const auto& k : f->kids) {
        auto sub = clauses_of_nnf(k);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case QfFormula::Kind::And: {
      std::vector<std::vector<std::vector<Literal>>> kid_clauses;
      for (const auto& k : f->kids) kid_clauses.push_back(clauses_of_nnf(k));
      std::vector<std::vector<Literal>> out;
      std::vector<Literal> cur;
      clause_product(kid_clauses, 0, &cur, &out);
      return out;
    }
    default:
      fail(ErrorKind::TypeError, "negation survived NNF");
  }
}

}  // namespace

FPtr to_dnf(const FPtr& f) {
  FPtr nnf = to_nnf(f, false);
  auto clauses = clauses_of_nnf(nnf);
  // canonical ordering and deduplication by printed form
  for (auto& c : clauses) {
    std::sort(c.begin(), c.end(), [](const Literal& a, const Literal& b) {
      return a.to_string() < b.to_string();
    });
    c.erase(std::unique(c.begin(), c.end(),
                        [](const Literal& a, const Literal& b) {
                          return a.to_string() == b.to_string();
                        }),
            c.end());
  }
  std::sort(clauses.begin(), clauses.end(),
            [](const std::vector<Literal>& a, const std::vector<Literal>& b) {
              std::string sa, sb;
              for (const auto& l : a) sa += l.to_string() + ";";
              for (const auto& l : b) sb += l.to_string() + ";";
              return sa < sb;
            });
  clauses.erase(std::unique(clauses.begin(), clauses.end(),
                            [](const std::vector<Literal>& a, const std::vector<Literal>& b) {
                              if (a.size() != b.size()) return false;
                              for (size_t i = 0; i < a.size(); ++i)
                                if (a[i].to_string() != b[i].to_string()) return false;
                              return true;
                            }),
                clauses.end());
  std::vector<FPtr> djs;
  for (auto& c : clauses) {
    std::vector<FPtr> lits;
    for (auto& l : c) lits.push_back(QfFormula::literal(l));
    djs.push_back(QfFormula::conj(std::move(lits)));
  }
  return QfFormula::disj(std::move(djs));
}

std::vector<std::vector<Literal>> dnf_clauses(const FPtr& dnf) {
  std::vector<std::vector<Literal>> out;
  auto clause_of = [](const FPtr& f) {
    std::vector<Literal> c;
    if (f->kind == QfFormula::Kind::Lit) c.push_back(f->lit);
    else {
      assert(f->kind == QfFormula::Kind::And);
      for (const auto& k : f->kids) {
        assert(k->kind == QfFormula::Kind::Lit);
        c.push_back(k->lit);
      }
    }
    return c;
  };
  if (dnf->kind == QfFormula::Kind::Or) {
    for (const auto& k : dnf->kids) out.push_back(clause_of(k));
  } else {
    out.push_back(clause_of(dnf));
  }
  return out;
}

// --- complexity ----------------------------------------------------------------

namespace {
bool contains_rv(const RvPtr& t);
bool contains_rv_vf(const VfPtr& t) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
    case VfTerm::Kind::Var: return false;
    case VfTerm::Kind::Sn: return contains_rv(t->rv_arg);
    case VfTerm::Kind::Add:
    case VfTerm::Kind::Sub:
    case VfTerm::Kind::Mul: return contains_rv_vf(t->a) || contains_rv_vf(t->b);
    case VfTerm::Kind::Neg:
    case VfTerm::Kind::Pow: return contains_rv_vf(t->a);
  }
  return false;
}
bool contains_rv(const RvPtr& t) {
  switch (t->kind) {
    case RvTerm::Kind::Const:
    case RvTerm::Kind::Var: return false;
    case RvTerm::Kind::RvApply: return true;
    case RvTerm::Kind::Mul: return contains_rv(t->a) || contains_rv(t->b);
    case RvTerm::Kind::Pow: return contains_rv(t->a);
    case RvTerm::Kind::KSum:
      for (const auto& s : t->summands)
        if (contains_rv(s)) return true;
      return false;
  }
  return false;
}
}  // namespace

int complexity(const RvPtr& t) {
  switch (t->kind) {
    case RvTerm::Kind::Const:
    case RvTerm::Kind::Var: return 0;
    case RvTerm::Kind::RvApply: return complexity(t->vf_arg);
    case RvTerm::Kind::Mul: return std::max(complexity(t->a), complexity(t->b));
    case RvTerm::Kind::Pow: return complexity(t->a);
    case RvTerm::Kind::KSum: {
      int m = 0;
      for (const auto& s : t->summands) m = std::max(m, complexity(s));
      return m;
    }
  }
  return 0;
}

int complexity(const VfPtr& t) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
    case VfTerm::Kind::Var: return 0;
    case VfTerm::Kind::Sn:
      // |sn(σ)| = |σ| + 1 when σ contains rv; otherwise sn adds nothing
      return complexity(t->rv_arg) + (contains_rv(t->rv_arg) ? 1 : 0);
    case VfTerm::Kind::Add:
    case VfTerm::Kind::Sub:
    case VfTerm::Kind::Mul: return std::max(complexity(t->a), complexity(t->b));
    case VfTerm::Kind::Neg:
    case VfTerm::Kind::Pow: return complexity(t->a);
  }
  return 0;
}

int complexity(const FPtr& f) {
  if (f->kind == QfFormula::Kind::Lit) {
    const Literal& l = f->lit;
    int m = 0;
    if (l.vf) m = std::max(m, complexity(l.vf));
    if (l.lhs) m = std::max(m, complexity(l.lhs));
    if (l.rhs) m = std::max(m, complexity(l.rhs));
    return m;
  }
  int m = 0;
  for (const auto& k : f->kids) m = std::max(m, complexity(k));
  return m;
}

// --- lower_complexity -----------------------------------------------------------

namespace {

struct Replacements {
  std::vector<std::pair<RvPtr, std::string>> map;  // rv(σ) occurrence -> variable
  int counter = 0;
};

bool same_term(const RvPtr& a, const RvPtr& b) {
  return print_rv_term(a) == print_rv_term(b);
}

// collect distinct subterms rv(σ) with |σ| <= 1, outermost-first
void collect_rv_terms(const RvPtr& t, std::vector<RvPtr>* out);
void collect_rv_terms_vf(const VfPtr& t, std::vector<RvPtr>* out) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
    case VfTerm::Kind::Var: return;
    case VfTerm::Kind::Sn: collect_rv_terms(t->rv_arg, out); return;
    case VfTerm::Kind::Add:
    case VfTerm::Kind::Sub:
    case VfTerm::Kind::Mul:
      collect_rv_terms_vf(t->a, out);
      collect_rv_terms_vf(t->b, out);
      return;
    case VfTerm::Kind::Neg:
    case VfTerm::Kind::Pow: collect_rv_terms_vf(t->a, out); return;
  }
}
void collect_rv_terms(const RvPtr& t, std::vector<RvPtr>* out) {
  if (t->kind == RvTerm::Kind::RvApply && complexity(t->vf_arg) <= 1) {
    for (const auto& seen : *out)
      if (same_term(seen, t)) return;
    out->push_back(t);
    return;  // occurrences inside the definition conjunct stay as they are
  }
  switch (t->kind) {
    case RvTerm::Kind::Const:
    case RvTerm::Kind::Var: return;
    case RvTerm::Kind::RvApply: collect_rv_terms_vf(t->vf_arg, out); return;
    case RvTerm::Kind::Mul:
      collect_rv_terms(t->a, out);
      collect_rv_terms(t->b, out);
      return;
    case RvTerm::Kind::Pow: collect_rv_terms(t->a, out); return;
    case RvTerm::Kind::KSum:
      for (const auto& s : t->summands) collect_rv_terms(s, out);
      return;
  }
}

RvPtr replace_rv(const RvPtr& t, const std::vector<std::pair<RvPtr, std::string>>& defs);
VfPtr replace_vf(const VfPtr& t, const std::vector<std::pair<RvPtr, std::string>>& defs) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
    case VfTerm::Kind::Var: return t;
    case VfTerm::Kind::Sn: return VfTerm::sn(replace_rv(t->rv_arg, defs));
    case VfTerm::Kind::Add: return VfTerm::add(replace_vf(t->a, defs), replace_vf(t->b, defs));
    case VfTerm::Kind::Sub: return VfTerm::sub(replace_vf(t->a, defs), replace_vf(t->b, defs));
    case VfTerm::Kind::Mul: return VfTerm::mul(replace_vf(t->a, defs), replace_vf(t->b, defs));
    case VfTerm::Kind::Neg: return VfTerm::neg(replace_vf(t->a, defs));
    case VfTerm::Kind::Pow: return VfTerm::pow(replace_vf(t->a, defs), t->exponent);
  }
  return t;
}
RvPtr replace_rv(const RvPtr& t, const std::vector<std::pair<RvPtr, std::string>>& defs) {
  for (const auto& [term, name] : defs)
    if (same_term(term, t)) return RvTerm::variable(name);
  switch (t->kind) {
    case RvTerm::Kind::Const:
    case RvTerm::Kind::Var: return t;
    case RvTerm::Kind::RvApply: return RvTerm::rv(replace_vf(t->vf_arg, defs));
    case RvTerm::Kind::Mul: return RvTerm::mul(replace_rv(t->a, defs), replace_rv(t->b, defs));
    case RvTerm::Kind::Pow: return RvTerm::pow(replace_rv(t->a, defs), t->exponent);
    case RvTerm::Kind::KSum: {
      std::vector<RvPtr> ss;
      for (const auto& s : t->summands) ss.push_back(replace_rv(s, defs));
      return RvTerm::ksum(std::move(ss));
    }
  }
  return t;
}

FPtr replace_formula(const FPtr& f, const std::vector<std::pair<RvPtr, std::string>>& defs) {
  if (f->kind == QfFormula::Kind::Lit) {
    Literal l = f->lit;
    if (l.vf) l.vf = replace_vf(l.vf, defs);
    if (l.lhs) l.lhs = replace_rv(l.lhs, defs);
    if (l.rhs) l.rhs = replace_rv(l.rhs, defs);
    return QfFormula::literal(std::move(l));
  }
  std::vector<FPtr> kids;
  for (const auto& k : f->kids) kids.push_back(replace_formula(k, defs));
  auto g = std::make_shared<QfFormula>();
  g->kind = f->kind;
  g->kids = std::move(kids);
  return g;
}

void collect_in_formula(const FPtr& f, std::vector<RvPtr>* out) {
  if (f->kind == QfFormula::Kind::Lit) {
    const Literal& l = f->lit;
    if (l.vf) collect_rv_terms_vf(l.vf, out);
    if (l.lhs) collect_rv_terms(l.lhs, out);
    if (l.rhs) collect_rv_terms(l.rhs, out);
    return;
  }
  for (const auto& k : f->kids) collect_in_formula(k, out);
}

}  // namespace

Lowered lower_complexity(const FPtr& f) {
  if (complexity(f) < 1)
    fail(ErrorKind::NothingToLower, "formula already has complexity 0");
  std::vector<RvPtr> terms;
  collect_in_formula(f, &terms);
  if (terms.empty())
    fail(ErrorKind::NothingToLower, "no rv-terms of complexity <= 1 to replace");
  VarInventory inv = variables(f);
  Lowered out;
  std::vector<std::pair<RvPtr, std::string>> defs;
  int counter = 1;
  for (const auto& t : terms) {
    std::string name;
    do {
      name = "Z" + std::to_string(counter++);
    } while (inv.rv_vars.count(name) || inv.vf_vars.count(name));
    defs.push_back({t, name});
    out.new_vars.push_back(name);
    out.definitions.push_back({name, t});
  }
  FPtr body = replace_formula(f, defs);
  std::vector<FPtr> conj = {body};
  for (const auto& [term, name] : defs) {
    Literal l;
    l.rel = Literal::Rel::RvEq;
    l.lhs = term;
    l.rhs = RvTerm::variable(name);
    conj.push_back(QfFormula::literal(l));
  }
  out.formula = QfFormula::conj(std::move(conj));
  return out;
}

// --- substitution ----------------------------------------------------------------

VfPtr substitute(const VfPtr& t, const Assignment& a) {
  switch (t->kind) {
    case VfTerm::Kind::Const: return t;
    case VfTerm::Kind::Var: {
      auto it = a.vf.find(t->var);
      if (it != a.vf.end()) return VfTerm::constant(it->second);
      if (a.rv.count(t->var))
        fail(ErrorKind::TypeError, "RV value substituted into VF variable " + t->var);
      return t;
    }
    case VfTerm::Kind::Sn: return VfTerm::sn(substitute(t->rv_arg, a));
    case VfTerm::Kind::Add: return VfTerm::add(substitute(t->a, a), substitute(t->b, a));
    case VfTerm::Kind::Sub: return VfTerm::sub(substitute(t->a, a), substitute(t->b, a));
    case VfTerm::Kind::Mul: return VfTerm::mul(substitute(t->a, a), substitute(t->b, a));
    case VfTerm::Kind::Neg: return VfTerm::neg(substitute(t->a, a));
    case VfTerm::Kind::Pow: return VfTerm::pow(substitute(t->a, a), t->exponent);
  }
  return t;
}

RvPtr substitute(const RvPtr& t, const Assignment& a) {
  switch (t->kind) {
    case RvTerm::Kind::Const: return t;
    case RvTerm::Kind::Var: {
      auto it = a.rv.find(t->var);
      if (it != a.rv.end()) return RvTerm::constant(it->second);
      if (a.vf.count(t->var))
        fail(ErrorKind::TypeError, "VF value substituted into RV variable " + t->var);
      return t;
    }
    case RvTerm::Kind::RvApply: return RvTerm::rv(substitute(t->vf_arg, a));
    case RvTerm::Kind::Mul: return RvTerm::mul(substitute(t->a, a), substitute(t->b, a));
    case RvTerm::Kind::Pow: return RvTerm::pow(substitute(t->a, a), t->exponent);
    case RvTerm::Kind::KSum: {
      std::vector<RvPtr> ss;
      for (const auto& s : t->summands) ss.push_back(substitute(s, a));
      return RvTerm::ksum(std::move(ss));
    }
  }
  return t;
}

FPtr substitute(const FPtr& f, const Assignment& a) {
  if (f->kind == QfFormula::Kind::Lit) {
    Literal l = f->lit;
    if (l.vf) l.vf = substitute(l.vf, a);
    if (l.lhs) l.lhs = substitute(l.lhs, a);
    if (l.rhs) l.rhs = substitute(l.rhs, a);
    return QfFormula::literal(std::move(l));
  }
  std::vector<FPtr> kids;
  for (const auto& k : f->kids) kids.push_back(substitute(k, a));
  auto g = std::make_shared<QfFormula>();
  g->kind = f->kind;
  g->kids = std::move(kids);
  return g;
}

}  // namespace rvkit
