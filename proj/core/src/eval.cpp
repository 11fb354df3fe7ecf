#include <cassert>

#include "rvkit/decompose.hpp"
#include "rvkit/errors.hpp"

namespace rvkit {

std::optional<Rv0> eval_rv_term(const RvPtr& t, const Assignment& a, SectionKind kind) {
  switch (t->kind) {
    case RvTerm::Kind::Const:
      return t->cval;
    case RvTerm::Kind::Var: {
      auto it = a.rv.find(t->var);
      if (it == a.rv.end())
        fail(ErrorKind::TypeError, "unbound RV variable " + t->var);
      return it->second;
    }
    case RvTerm::Kind::RvApply: {
      auto v = eval_vf_term(t->vf_arg, a, kind);
      if (!v) return std::nullopt;
      return Rv0::of(v->rv());
    }
    case RvTerm::Kind::Mul: {
      auto x = eval_rv_term(t->a, a, kind);
      auto y = eval_rv_term(t->b, a, kind);
      if (!x || !y) return std::nullopt;
      return rv0_mul(*x, *y);
    }
    case RvTerm::Kind::Pow: {
      auto x = eval_rv_term(t->a, a, kind);
      if (!x) return std::nullopt;
      if (x->is_k_zero()) {
        if (t->exponent <= 0) return std::nullopt;
        return x;
      }
      if (x->rv().is_infinity()) return x;  // ∞^n stays ∞
      return Rv0::of(x->rv().pow(t->exponent));
    }
    case RvTerm::Kind::KSum: {
      std::vector<Rv0> vals;
      for (const auto& s : t->summands) {
        auto v = eval_rv_term(s, a, kind);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      return k_term_sum(vals);
    }
  }
  return std::nullopt;
}

std::optional<Puiseux> eval_vf_term(const VfPtr& t, const Assignment& a, SectionKind kind) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
      return t->cval;
    case VfTerm::Kind::Var: {
      auto it = a.vf.find(t->var);
      if (it == a.vf.end())
        fail(ErrorKind::TypeError, "unbound VF variable " + t->var);
      return it->second;
    }
    case VfTerm::Kind::Sn: {
      if (kind == SectionKind::None)
        fail(ErrorKind::TypeError, "sn-term evaluated without a section");
      auto v = eval_rv_term(t->rv_arg, a, kind);
      if (!v) return std::nullopt;
      return section(kind, *v);
    }
    case VfTerm::Kind::Add: {
      auto x = eval_vf_term(t->a, a, kind), y = eval_vf_term(t->b, a, kind);
      if (!x || !y) return std::nullopt;
      return *x + *y;
    }
    case VfTerm::Kind::Sub: {
      auto x = eval_vf_term(t->a, a, kind), y = eval_vf_term(t->b, a, kind);
      if (!x || !y) return std::nullopt;
      return *x - *y;
    }
    case VfTerm::Kind::Mul: {
      auto x = eval_vf_term(t->a, a, kind), y = eval_vf_term(t->b, a, kind);
      if (!x || !y) return std::nullopt;
      return *x * *y;
    }
    case VfTerm::Kind::Neg: {
      auto x = eval_vf_term(t->a, a, kind);
      if (!x) return std::nullopt;
      return -*x;
    }
    case VfTerm::Kind::Pow: {
      auto x = eval_vf_term(t->a, a, kind);
      if (!x) return std::nullopt;
      if (t->exponent < 0) fail(ErrorKind::TypeError, "negative VF power");
      return x->pow(t->exponent);
    }
  }
  return std::nullopt;
}

namespace {

bool eval_literal(const Literal& l, const Assignment& a, SectionKind kind) {
  switch (l.rel) {
    case Literal::Rel::VfEq:
    case Literal::Rel::VfNe: {
      auto v = eval_vf_term(l.vf, a, kind);
      if (!v) return false;  // undefined section argument: both polarities false
      bool zero;
      if (v->is_exact_zero()) zero = true;
      else if (v->known_nonzero()) zero = false;
      else
        fail(ErrorKind::InsufficientPrecision, "VF literal undecided at this precision");
      return l.rel == Literal::Rel::VfEq ? zero : !zero;
    }
    default: {
      auto x = eval_rv_term(l.lhs, a, kind);
      auto y = eval_rv_term(l.rhs, a, kind);
      if (!x || !y) return false;  // undefined K-term: both polarities false
      switch (l.rel) {
        case Literal::Rel::RvEq: return *x == *y;
        case Literal::Rel::RvNe: return !(*x == *y);
        case Literal::Rel::RvLe:
        case Literal::Rel::RvGt: {
          // comparisons touching the K zero are undefined, hence false
          if (x->is_k_zero() || y->is_k_zero()) return false;
          bool le = RvElem::leq(x->rv(), y->rv());
          return l.rel == Literal::Rel::RvLe ? le : !le;
        }
        default: break;
      }
    }
  }
  return false;
}

bool eval_nnf(const FPtr& f, const Assignment& a, SectionKind kind, bool negate) {
  switch (f->kind) {
    case QfFormula::Kind::Lit:
      return eval_literal(negate ? f->lit.flip() : f->lit, a, kind);
    case QfFormula::Kind::Not:
      return eval_nnf(f->kids[0], a, kind, !negate);
    case QfFormula::Kind::And:
    case QfFormula::Kind::Or: {
      bool conj = (f->kind == QfFormula::Kind::And) != negate;
      for (const auto& k : f->kids) {
        bool v = eval_nnf(k, a, kind, negate);
        if (conj && !v) return false;
        if (!conj && v) return true;
      }
      return conj;
    }
  }
  return false;
}

}  // namespace

bool eval_qf(const FPtr& f, const Assignment& a, SectionKind kind) {
  return eval_nnf(f, a, kind, false);
}

bool eval_qf(const FPtr& f, SectionKind kind) {
  Assignment empty;
  return eval_qf(f, empty, kind);
}

uint64_t fnv_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace rvkit
