#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "rvkit/decompose.hpp"
#include "rvkit/errors.hpp"

// One-variable literal solving by stratification over the critical tree of
// the occurring polynomials' roots. On every open annulus between critical
// radii around a point p, each factor rv(x - q) is either rv(x - p) itself
// (contact above the annulus) or a constant (contact below), so both sides
// reduce to monomials in s = rv(x - p) and truth depends on v(x - p) alone.
// At a critical radius the contact factors become linear in the residue of
// s, and truth is a polynomial condition on that residue. Both region kinds
// realize as balls, thin annuli, and rv-balls.

namespace rvkit {
namespace {

struct NeedDeeper {
  Rational needed;
};

// ---------- polynomial extraction -------------------------------------------

VfPoly to_vf_poly(const VfPtr& t, const std::string& var, const FieldPtr& f) {
  switch (t->kind) {
    case VfTerm::Kind::Const:
      return VfPoly::constant(t->cval);
    case VfTerm::Kind::Var:
      if (t->var != var)
        fail(ErrorKind::TypeError, "unbound VF variable " + t->var + " in a one-variable literal");
      return VfPoly::variable(f);
    case VfTerm::Kind::Sn:
      fail(ErrorKind::UnsupportedTerm,
           "sn-terms must be reduced via the sections engine before decomposition");
    case VfTerm::Kind::Add:
      return to_vf_poly(t->a, var, f) + to_vf_poly(t->b, var, f);
    case VfTerm::Kind::Sub:
      return to_vf_poly(t->a, var, f) - to_vf_poly(t->b, var, f);
    case VfTerm::Kind::Mul:
      return to_vf_poly(t->a, var, f) * to_vf_poly(t->b, var, f);
    case VfTerm::Kind::Neg:
      return to_vf_poly(t->a, var, f).scale(-Puiseux::one(f));
    case VfTerm::Kind::Pow: {
      if (t->exponent < 0) fail(ErrorKind::TypeError, "negative VF power");
      VfPoly base = to_vf_poly(t->a, var, f);
      VfPoly acc = VfPoly::constant(Puiseux::one(f));
      for (int i = 0; i < t->exponent; ++i) acc = acc * base;
      return acc;
    }
  }
  fail(ErrorKind::TypeError, "malformed VF term");
}

// ---------- flattened literal sides -------------------------------------------

struct FlatSummand {
  Rv0 coeff;
  std::vector<std::pair<int, int>> rvs;  // (poly index, exponent > 0)
};
using FlatKSum = std::vector<FlatSummand>;

struct FlatSide {
  Rv0 cst;
  std::vector<std::pair<int, int>> rvs;  // (poly index, exponent != 0)
  std::vector<FlatKSum> ksums;
};

class PolyRegistry {
 public:
  explicit PolyRegistry(FieldPtr f) : field_(std::move(f)) {}
  int add(const VfPoly& p) {
    std::string key = p.to_string();
    for (size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] == key) return static_cast<int>(i);
    keys_.push_back(key);
    polys_.push_back(p);
    return static_cast<int>(polys_.size()) - 1;
  }
  const VfPoly& at(int i) const { return polys_[i]; }
  size_t size() const { return polys_.size(); }
  const std::vector<VfPoly>& all() const { return polys_; }
  const FieldPtr& field() const { return field_; }

 private:
  FieldPtr field_;
  std::vector<VfPoly> polys_;
  std::vector<std::string> keys_;
};

void flatten_rv(const RvPtr& t, const std::string& var, PolyRegistry* reg, FlatSide* side,
                int exponent) {
  switch (t->kind) {
    case RvTerm::Kind::Const: {
      Rv0 c = t->cval;
      if (exponent != 1 && !c.is_k_zero() && !c.rv().is_infinity())
        c = Rv0::of(c.rv().pow(exponent));
      if (c.is_k_zero() && exponent <= 0)
        fail(ErrorKind::TypeError, "nonpositive power of the K zero");
      auto folded = rv0_mul(side->cst, c);
      if (!folded)
        fail(ErrorKind::UnsupportedTerm, "constant product undefined (K zero times non-K unit)");
      side->cst = *folded;
      return;
    }
    case RvTerm::Kind::Var:
      fail(ErrorKind::TypeError, "free RV variable " + t->var + " in a one-variable literal");
    case RvTerm::Kind::RvApply: {
      VfPoly p = to_vf_poly(t->vf_arg, var, reg->field());
      if (p.is_zero()) {
        side->cst = Rv0::of(RvElem::infinity(reg->field()));
        return;
      }
      if (p.degree() == 0) {
        auto folded = rv0_mul(side->cst, Rv0::of(p.coeff(0).rv().pow(exponent)));
        if (!folded) fail(ErrorKind::UnsupportedTerm, "constant product undefined");
        side->cst = *folded;
        return;
      }
      side->rvs.push_back({reg->add(p), exponent});
      return;
    }
    case RvTerm::Kind::Mul:
      flatten_rv(t->a, var, reg, side, exponent);
      flatten_rv(t->b, var, reg, side, exponent);
      return;
    case RvTerm::Kind::Pow:
      flatten_rv(t->a, var, reg, side, exponent * t->exponent);
      return;
    case RvTerm::Kind::KSum: {
      if (exponent <= 0)
        fail(ErrorKind::UnsupportedTerm, "nonpositive power of a K-term");
      FlatKSum sum;
      for (const auto& s : t->summands) {
        FlatSide tmp;
        tmp.cst = Rv0::of(RvElem::unit(Rational(0), KElem::one(reg->field())));
        flatten_rv(s, var, reg, &tmp, 1);
        if (!tmp.ksums.empty())
          fail(ErrorKind::UnsupportedTerm, "nested K-terms are not supported");
        FlatSummand fs;
        fs.coeff = tmp.cst;
        for (auto& [pi, e] : tmp.rvs) {
          if (e <= 0) fail(ErrorKind::UnsupportedTerm, "nonpositive rv power inside a K-term");
          fs.rvs.push_back({pi, e});
        }
        sum.push_back(std::move(fs));
      }
      for (int i = 0; i < exponent; ++i) side->ksums.push_back(sum);
      return;
    }
  }
}

FlatSide flatten_side(const RvPtr& t, const std::string& var, PolyRegistry* reg) {
  FlatSide side;
  side.cst = Rv0::of(RvElem::unit(Rational(0), KElem::one(reg->field())));
  flatten_rv(t, var, reg, &side, 1);
  return side;
}

// ---------- stratification points ----------------------------------------------

struct StratPoint {
  Puiseux x;
  bool exact;
  std::map<int, int> mult;  // poly index -> multiplicity
};

struct Strata {
  std::vector<StratPoint> points;              // index 0 is the reference 0
  std::vector<std::vector<Rational>> contact;  // v(p_i - p_j)
  Rational prec;
};

RvElem diff_rv(const Strata& st, int i, int j) {
  Puiseux d = st.points[i].x.as_exact() - st.points[j].x.as_exact();
  assert(d.known_nonzero());
  return d.rv();
}

Strata build_strata(const PolyRegistry& reg, Rational prec, const Budgets& budgets) {
  const FieldPtr& f = reg.field();
  for (int attempt = 0; attempt < 10; ++attempt) {
    Strata st;
    st.prec = prec;
    StratPoint zero;
    zero.x = Puiseux::zero(f);
    zero.exact = true;
    st.points.push_back(zero);
    bool ok = true;
    for (size_t pi = 0; pi < reg.size() && ok; ++pi) {
      const VfPoly& P = reg.at(pi);
      if (P.degree() < 1) continue;
      for (const auto& r : puiseux_roots(P, prec, budgets.newton_steps)) {
        bool merged = false;
        for (auto& sp : st.points) {
          Puiseux d = sp.x.as_exact() - r.value.as_exact();
          if (d.is_exact_zero()) {
            sp.mult[static_cast<int>(pi)] += r.multiplicity;
            merged = true;
            break;
          }
          if (!d.known_nonzero()) {
            if (sp.exact && r.exact) {
              // exact and distinct data, difference has terms beyond view —
              // cannot happen for exact elements
              continue;
            }
            ok = false;  // indistinguishable at this precision
            break;
          }
        }
        if (!ok) break;
        if (!merged) {
          StratPoint sp;
          sp.x = r.value;
          sp.exact = r.exact;
          sp.mult[static_cast<int>(pi)] = r.multiplicity;
          st.points.push_back(std::move(sp));
        }
      }
    }
    if (ok) {
      size_t n = st.points.size();
      st.contact.assign(n, std::vector<Rational>(n, Rational(0)));
      for (size_t i = 0; i < n && ok; ++i)
        for (size_t j = i + 1; j < n; ++j) {
          Puiseux d = st.points[i].x.as_exact() - st.points[j].x.as_exact();
          if (!d.known_nonzero()) { ok = false; break; }
          st.contact[i][j] = st.contact[j][i] = d.val().value();
        }
    }
    if (ok) return st;
    prec = prec * Rational(2) + Rational(8);
  }
  fail(ErrorKind::PrecisionNotReached, "could not separate the critical points");
}

// ---------- symbolic values ------------------------------------------------------

enum class Tag { Undef, Inf, KZero, Unit };

// value on an open annulus of levels: residue res · u^slope, vrv slope·γ + voff
struct IntervalSym {
  Tag tag = Tag::Undef;
  int slope = 0;
  Rational voff;
  KElem res;
};

struct UCond {
  KPoly poly;
  bool vanish;
};

struct FixedCase {
  Tag tag = Tag::Undef;
  Rational v;
  KPoly num, den;
  std::vector<UCond> conds;
};

struct GammaBound {
  bool has = false;
  Rational value;
};

struct Piece {
  enum class Kind { Interval, FixedAllU, FixedUValues } kind;
  int point = 0;
  GammaBound lo, hi;             // Interval: open range of v(x - p)
  bool include_point = false;    // Interval reaching +inf may absorb the point
  Rational gamma;                // Fixed level
  std::vector<KElem> include_u;  // FixedUValues
  std::vector<KElem> exclude_u;  // FixedAllU
};

struct SideCtx {
  const FlatSide* side;
  const Strata* st;
  const PolyRegistry* reg;
  int p;
};

// ---- interval evaluation ----

// contact classification for an interval (lo, hi): true = the whole annulus
// lies below the contact (factor equals rv(x - p))
bool contact_is_near(const Rational& cq, const GammaBound& lo, const GammaBound& hi) {
  if (hi.has && cq >= hi.value) return true;
  if (lo.has && cq <= lo.value) return false;
  if (!hi.has) return false;  // interval reaches +inf: every finite contact is below
  // (-inf, hi) with cq >= hi handled above; cq < hi means the contact is inside,
  // which region construction rules out
  assert(!lo.has);
  return true;
}

IntervalSym interval_rv_factor(const SideCtx& c, int poly, int e, const GammaBound& lo,
                               const GammaBound& hi) {
  const VfPoly& P = c.reg->at(poly);
  IntervalSym out;
  out.tag = Tag::Unit;
  out.voff = Rational(0);
  out.res = KElem::one(c.reg->field());
  RvElem lc = P.leading().rv();
  out.voff += lc.gamma() * Rational(e);
  out.res = out.res * lc.residue().pow(e);
  for (size_t q = 0; q < c.st->points.size(); ++q) {
    auto it = c.st->points[q].mult.find(poly);
    if (it == c.st->points[q].mult.end() || it->second == 0) continue;
    int m = it->second;
    if (static_cast<int>(q) == c.p) {
      out.slope += m * e;
      continue;
    }
    if (contact_is_near(c.st->contact[c.p][q], lo, hi)) {
      out.slope += m * e;
    } else {
      RvElem d = diff_rv(*c.st, c.p, static_cast<int>(q));
      out.voff += d.gamma() * Rational(m * e);
      out.res = out.res * d.residue().pow(m * e);
    }
  }
  return out;
}

IntervalSym interval_side(const SideCtx& c, const GammaBound& lo, const GammaBound& hi,
                          std::vector<Rational>* splits) {
  auto push_split = [&](const Rational& g) {
    if ((!lo.has || g > lo.value) && (!hi.has || g < hi.value)) splits->push_back(g);
  };
  IntervalSym acc;
  const Rv0& cst = c.side->cst;
  if (cst.is_infinity()) { acc.tag = Tag::Inf; return acc; }
  if (cst.is_k_zero()) {
    acc.tag = Tag::KZero;
    acc.res = KElem::zero(c.reg->field());
  } else {
    acc.tag = Tag::Unit;
    acc.voff = cst.rv().gamma();
    acc.res = cst.rv().residue();
  }
  for (const auto& [poly, e] : c.side->rvs) {
    IntervalSym fsym = interval_rv_factor(c, poly, e, lo, hi);
    if (acc.tag == Tag::KZero) {
      // 0 times a unit is defined only where the unit lies in K
      if (fsym.slope != 0) {
        push_split(-fsym.voff / Rational(fsym.slope));
        acc.tag = Tag::Undef;
        return acc;
      }
      if (!fsym.voff.is_zero()) { acc.tag = Tag::Undef; return acc; }
      continue;
    }
    acc.slope += fsym.slope;
    acc.voff += fsym.voff;
    acc.res = acc.res * fsym.res;
  }
  for (const auto& sum : c.side->ksums) {
    KElem total = KElem::zero(c.reg->field());
    bool undefined = false;
    for (const auto& s : sum) {
      if (s.coeff.is_k_zero()) continue;
      if (s.coeff.is_infinity()) { undefined = true; break; }
      IntervalSym v;
      v.tag = Tag::Unit;
      v.voff = s.coeff.rv().gamma();
      v.res = s.coeff.rv().residue();
      for (const auto& [poly, e] : s.rvs) {
        IntervalSym fsym = interval_rv_factor(c, poly, e, lo, hi);
        v.slope += fsym.slope;
        v.voff += fsym.voff;
        v.res = v.res * fsym.res;
      }
      if (v.slope != 0) {
        push_split(-v.voff / Rational(v.slope));
        undefined = true;
        break;
      }
      if (!v.voff.is_zero()) { undefined = true; break; }
      total = total + v.res;
    }
    if (undefined) { acc.tag = Tag::Undef; return acc; }
    if (acc.tag == Tag::KZero) continue;  // 0 times a K value stays 0
    if (total.is_zero()) {
      if (acc.slope == 0 && acc.voff.is_zero()) {
        acc.tag = Tag::KZero;
        acc.res = KElem::zero(c.reg->field());
      } else if (acc.slope != 0) {
        push_split(-acc.voff / Rational(acc.slope));
        acc.tag = Tag::Undef;
        return acc;
      } else {
        acc.tag = Tag::Undef;
        return acc;
      }
    } else {
      acc.res = acc.res * total;
    }
  }
  return acc;
}

// ---- fixed-level evaluation ----

std::vector<FixedCase> fixed_mul(const std::vector<FixedCase>& a,
                                 const std::vector<FixedCase>& b) {
  std::vector<FixedCase> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      FixedCase r;
      r.conds = x.conds;
      r.conds.insert(r.conds.end(), y.conds.begin(), y.conds.end());
      if (x.tag == Tag::Undef || y.tag == Tag::Undef) r.tag = Tag::Undef;
      else if (x.tag == Tag::Inf || y.tag == Tag::Inf) r.tag = Tag::Inf;
      else if (x.tag == Tag::KZero || y.tag == Tag::KZero) {
        const FixedCase& other = (x.tag == Tag::KZero) ? y : x;
        if (other.tag == Tag::KZero || other.v.is_zero()) r.tag = Tag::KZero;
        else r.tag = Tag::Undef;
      } else {
        r.tag = Tag::Unit;
        r.v = x.v + y.v;
        r.num = x.num * y.num;
        r.den = x.den * y.den;
      }
      out.push_back(std::move(r));
    }
  return out;
}

FixedCase fixed_unit(Rational v, KPoly num, KPoly den) {
  FixedCase c;
  c.tag = Tag::Unit;
  c.v = std::move(v);
  c.num = std::move(num);
  c.den = std::move(den);
  return c;
}

FixedCase fixed_rv_factor(const SideCtx& c, int poly, int e, const Rational& gamma) {
  const FieldPtr& f = c.reg->field();
  const VfPoly& P = c.reg->at(poly);
  FixedCase out = fixed_unit(Rational(0), KPoly::constant(KElem::one(f)),
                             KPoly::constant(KElem::one(f)));
  RvElem lc = P.leading().rv();
  out.v += lc.gamma() * Rational(e);
  {
    KPoly scalar = KPoly::constant(lc.residue().pow(std::abs(e)));
    if (e >= 0) out.num = out.num * scalar;
    else out.den = out.den * scalar;
  }
  auto powed = [&](const KPoly& base, int count) {
    KPoly acc = KPoly::constant(KElem::one(f));
    for (int i = 0; i < count; ++i) acc = acc * base;
    return acc;
  };
  for (size_t q = 0; q < c.st->points.size(); ++q) {
    auto it = c.st->points[q].mult.find(poly);
    if (it == c.st->points[q].mult.end() || it->second == 0) continue;
    int m = it->second;
    KPoly factor(f);
    Rational vf;
    if (static_cast<int>(q) == c.p) {
      factor = KPoly::monomial(KElem::one(f), 1);
      vf = gamma;
    } else {
      Rational cq = c.st->contact[c.p][q];
      if (cq > gamma) {
        factor = KPoly::monomial(KElem::one(f), 1);
        vf = gamma;
      } else if (cq < gamma) {
        RvElem d = diff_rv(*c.st, c.p, static_cast<int>(q));
        factor = KPoly::constant(d.residue());
        vf = d.gamma();
      } else {
        RvElem d = diff_rv(*c.st, c.p, static_cast<int>(q));
        factor = KPoly(f, {d.residue(), KElem::one(f)});  // u + res(p - q)
        vf = gamma;
      }
    }
    out.v += vf * Rational(m * e);
    KPoly pw = powed(factor, m * std::abs(e));
    if (e >= 0) out.num = out.num * pw;
    else out.den = out.den * pw;
  }
  return out;
}

std::vector<FixedCase> fixed_side(const SideCtx& c, const Rational& gamma) {
  const FieldPtr& f = c.reg->field();
  std::vector<FixedCase> acc;
  const Rv0& cst = c.side->cst;
  if (cst.is_infinity()) {
    FixedCase ic;
    ic.tag = Tag::Inf;
    acc.push_back(ic);
  } else if (cst.is_k_zero()) {
    FixedCase zc;
    zc.tag = Tag::KZero;
    acc.push_back(zc);
  } else {
    acc.push_back(fixed_unit(cst.rv().gamma(), KPoly::constant(cst.rv().residue()),
                             KPoly::constant(KElem::one(f))));
  }
  for (const auto& [poly, e] : c.side->rvs)
    acc = fixed_mul(acc, {fixed_rv_factor(c, poly, e, gamma)});
  for (const auto& sum : c.side->ksums) {
    bool undefined = false;
    KPoly num(f);
    KPoly den = KPoly::constant(KElem::one(f));
    for (const auto& s : sum) {
      if (s.coeff.is_k_zero()) continue;
      if (s.coeff.is_infinity()) { undefined = true; break; }
      FixedCase v = fixed_unit(s.coeff.rv().gamma(), KPoly::constant(s.coeff.rv().residue()),
                               KPoly::constant(KElem::one(f)));
      for (const auto& [poly, e] : s.rvs) {
        FixedCase fc = fixed_rv_factor(c, poly, e, gamma);
        v.v += fc.v;
        v.num = v.num * fc.num;
        v.den = v.den * fc.den;
      }
      if (!v.v.is_zero()) { undefined = true; break; }
      num = num * v.den + v.num * den;
      den = den * v.den;
    }
    std::vector<FixedCase> sum_cases;
    if (undefined) {
      FixedCase uc;
      sum_cases.push_back(uc);
    } else if (num.is_zero()) {
      FixedCase zc;
      zc.tag = Tag::KZero;
      sum_cases.push_back(zc);
    } else {
      FixedCase zc;
      zc.tag = Tag::KZero;
      zc.conds.push_back({num, true});
      sum_cases.push_back(zc);
      FixedCase un = fixed_unit(Rational(0), num, den);
      un.conds.push_back({num, false});
      sum_cases.push_back(un);
    }
    acc = fixed_mul(acc, sum_cases);
  }
  return acc;
}

// ---- relations ----

struct SubRange {
  GammaBound lo, hi;
};

std::vector<SubRange> interval_truth(Literal::Rel rel, const IntervalSym& L,
                                     const IntervalSym& R, const GammaBound& lo,
                                     const GammaBound& hi, std::vector<Rational>* splits) {
  auto push_split = [&](const Rational& g) {
    if ((!lo.has || g > lo.value) && (!hi.has || g < hi.value)) splits->push_back(g);
  };
  auto whole = [&]() { return std::vector<SubRange>{SubRange{lo, hi}}; };
  auto none = []() { return std::vector<SubRange>{}; };
  if (L.tag == Tag::Undef || R.tag == Tag::Undef) return none();
  bool eq_rel = rel == Literal::Rel::RvEq, ne_rel = rel == Literal::Rel::RvNe;
  bool le_rel = rel == Literal::Rel::RvLe;
  if (L.tag == Tag::KZero || R.tag == Tag::KZero) {
    if (!eq_rel && !ne_rel) return none();
    bool equal = L.tag == Tag::KZero && R.tag == Tag::KZero;
    return (equal == eq_rel) ? whole() : none();
  }
  if (L.tag == Tag::Inf || R.tag == Tag::Inf) {
    bool both = L.tag == Tag::Inf && R.tag == Tag::Inf;
    bool truth;
    if (eq_rel) truth = both;
    else if (ne_rel) truth = !both;
    else if (le_rel) truth = R.tag == Tag::Inf;
    else truth = L.tag == Tag::Inf && R.tag != Tag::Inf;
    return truth ? whole() : none();
  }
  int ds = L.slope - R.slope;
  Rational dv = L.voff - R.voff;
  if (eq_rel || ne_rel) {
    if (ds == 0) {
      bool equal = dv.is_zero() && L.res == R.res;
      return (equal == eq_rel) ? whole() : none();
    }
    push_split(-dv / Rational(ds));
    return eq_rel ? none() : whole();
  }
  // L <= R iff ds·γ + dv <= 0
  if (ds == 0) {
    bool le = !(dv > Rational(0));
    return (le == le_rel) ? whole() : none();
  }
  Rational g = -dv / Rational(ds);
  bool inside = (!lo.has || g > lo.value) && (!hi.has || g < hi.value);
  if (inside) {
    push_split(g);
    return none();  // requeued; the sub-intervals and the level decide
  }
  // uniform on the interval: for γ > g the sign of ds·γ + dv is sign(ds)
  bool gamma_above_g = lo.has && g <= lo.value;
  bool holds = gamma_above_g ? (le_rel ? ds < 0 : ds > 0)
                             : (le_rel ? ds > 0 : ds < 0);
  return holds ? whole() : none();
}

struct FixedTruth {
  std::vector<KPoly> must_vanish;
  std::vector<KPoly> must_not_vanish;
};

std::vector<FixedTruth> fixed_truth(Literal::Rel rel, const std::vector<FixedCase>& Ls,
                                    const std::vector<FixedCase>& Rs) {
  std::vector<FixedTruth> out;
  bool eq_rel = rel == Literal::Rel::RvEq, ne_rel = rel == Literal::Rel::RvNe;
  bool le_rel = rel == Literal::Rel::RvLe;
  for (const auto& L : Ls)
    for (const auto& R : Rs) {
      FixedTruth t;
      for (const auto& c : L.conds)
        (c.vanish ? t.must_vanish : t.must_not_vanish).push_back(c.poly);
      for (const auto& c : R.conds)
        (c.vanish ? t.must_vanish : t.must_not_vanish).push_back(c.poly);
      if (L.tag == Tag::Undef || R.tag == Tag::Undef) continue;
      if (L.tag == Tag::KZero || R.tag == Tag::KZero) {
        if (!eq_rel && !ne_rel) continue;
        bool equal = L.tag == Tag::KZero && R.tag == Tag::KZero;
        if (equal == eq_rel) out.push_back(std::move(t));
        continue;
      }
      if (L.tag == Tag::Inf || R.tag == Tag::Inf) {
        bool both = L.tag == Tag::Inf && R.tag == Tag::Inf;
        bool truth;
        if (eq_rel) truth = both;
        else if (ne_rel) truth = !both;
        else if (le_rel) truth = R.tag == Tag::Inf;
        else truth = L.tag == Tag::Inf && R.tag != Tag::Inf;
        if (truth) out.push_back(std::move(t));
        continue;
      }
      if (eq_rel || ne_rel) {
        bool v_match = (L.v == R.v);
        if (!v_match) {
          if (ne_rel) out.push_back(std::move(t));
          continue;
        }
        KPoly diff = L.num * R.den - R.num * L.den;
        if (diff.is_zero()) {
          if (eq_rel) out.push_back(std::move(t));
          continue;
        }
        (eq_rel ? t.must_vanish : t.must_not_vanish).push_back(diff);
        out.push_back(std::move(t));
        continue;
      }
      bool le = !(L.v > R.v);
      if (le == le_rel) out.push_back(std::move(t));
    }
  return out;
}

std::vector<KElem> residue_roots(const KPoly& p) {
  std::vector<KElem> out;
  KPolyRoots rr = k_poly_roots(p);
  if (!rr.unresolved.empty())
    fail(ErrorKind::ExtensionRequired,
         "residue condition " + rr.unresolved.front().to_string() + " has no root in K");
  for (const auto& [r, m] : rr.roots)
    if (!r.is_zero()) out.push_back(r);
  return out;
}

// ---------- the solver -------------------------------------------------------------

class LiteralSolver {
 public:
  LiteralSolver(const Literal& lit, const std::string& var, const FieldPtr& f,
                const Budgets& budgets)
      : lit_(lit), var_(var), field_(f), budgets_(budgets), reg_(f) {}

  SwissCheese solve() {
    if (lit_.rel == Literal::Rel::VfEq || lit_.rel == Literal::Rel::VfNe)
      return solve_vf();
    rel_ = lit_.rel;
    lhs_ = flatten_side(lit_.lhs, var_, &reg_);
    rhs_ = flatten_side(lit_.rhs, var_, &reg_);
    if (reg_.size() == 0) {
      Assignment empty;
      bool truth = eval_qf(QfFormula::literal(lit_), empty, SectionKind::None);
      return truth ? SwissCheese::whole(field_) : SwissCheese::empty_set(field_);
    }
    Rational prec(8);
    for (int attempt = 0; attempt < 8; ++attempt) {
      strata_.emplace(build_strata(reg_, prec, budgets_));
      try {
        return solve_with_strata();
      } catch (const NeedDeeper& nd) {
        prec = rvkit::max(prec * Rational(2), nd.needed + Rational(8));
      }
    }
    fail(ErrorKind::PrecisionNotReached, "root expansions never reached the needed radius");
  }

  const PolyRegistry& registry() const { return reg_; }

 private:
  SwissCheese solve_with_strata() {
    SwissCheese acc = SwissCheese::empty_set(field_);
    for (int p = 0; p < static_cast<int>(strata_->points.size()); ++p) {
      std::vector<Piece> pieces = solve_around(p);
      bool point_in = point_truth(p);
      if (point_in) {
        // fold the point into a piece reaching +inf when one exists
        for (auto& piece : pieces) {
          if (piece.kind == Piece::Kind::Interval && !piece.hi.has) {
            piece.include_point = true;
            point_in = false;
            break;
          }
        }
      }
      for (const auto& piece : pieces) acc = acc.unite(realize(piece));
      if (point_in) acc = acc.unite(point_cheese(p));
    }
    return acc;
  }

  SwissCheese solve_vf() {
    VfPoly P = to_vf_poly(lit_.vf, var_, field_);
    bool eq = lit_.rel == Literal::Rel::VfEq;
    if (P.is_zero()) return eq ? SwissCheese::whole(field_) : SwissCheese::empty_set(field_);
    if (P.degree() == 0) {
      bool zero = P.coeff(0).is_exact_zero();
      return (zero == eq) ? SwissCheese::whole(field_) : SwissCheese::empty_set(field_);
    }
    reg_.add(P);
    SwissCheese pts = SwissCheese::empty_set(field_);
    for (const auto& r : puiseux_roots(P, Rational(24), budgets_.newton_steps)) {
      if (!r.exact)
        fail(ErrorKind::PrecisionNotReached,
             "a root of " + P.to_string() + " has no finite expansion; its point "
             "cannot be represented exactly");
      pts = pts.unite(SwissCheese::of_point(r.value));
    }
    return eq ? pts : pts.complement();
  }

  std::vector<Rational> criticals(int p) const {
    std::vector<Rational> cs;
    for (size_t q = 0; q < strata_->points.size(); ++q)
      if (static_cast<int>(q) != p) cs.push_back(strata_->contact[p][q]);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
  }

  std::vector<Piece> solve_around(int p) {
    std::vector<Piece> out;
    SideCtx lc{&lhs_, &*strata_, &reg_, p};
    SideCtx rc{&rhs_, &*strata_, &reg_, p};
    struct Region {
      bool fixed = false;
      Rational gamma;
      GammaBound lo, hi;
    };
    std::vector<Region> work;
    std::vector<Rational> cs = criticals(p);
    if (cs.empty()) {
      work.push_back(Region{});
    } else {
      Region first;
      first.hi = GammaBound{true, cs.front()};
      work.push_back(first);
      for (size_t i = 0; i < cs.size(); ++i) {
        Region fx;
        fx.fixed = true;
        fx.gamma = cs[i];
        work.push_back(fx);
        Region iv;
        iv.lo = GammaBound{true, cs[i]};
        if (i + 1 < cs.size()) iv.hi = GammaBound{true, cs[i + 1]};
        work.push_back(iv);
      }
    }
    int guard = 0;
    while (!work.empty()) {
      if (++guard > budgets_.case_split * 16 + 512)
        fail(ErrorKind::UnsupportedTerm, "case split exceeded the configured budget");
      Region r = work.back();
      work.pop_back();
      if (r.fixed) {
        solve_fixed(p, lc, rc, r.gamma, &out);
        continue;
      }
      std::vector<Rational> splits;
      IntervalSym L = interval_side(lc, r.lo, r.hi, &splits);
      IntervalSym R = interval_side(rc, r.lo, r.hi, &splits);
      std::vector<SubRange> ranges;
      if (splits.empty())
        ranges = interval_truth(rel_, L, R, r.lo, r.hi, &splits);
      std::sort(splits.begin(), splits.end());
      splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
      if (!splits.empty()) {
        GammaBound lo_b = r.lo;
        for (const auto& g : splits) {
          Region iv;
          iv.lo = lo_b;
          iv.hi = GammaBound{true, g};
          work.push_back(iv);
          Region fx;
          fx.fixed = true;
          fx.gamma = g;
          work.push_back(fx);
          lo_b = GammaBound{true, g};
        }
        Region last;
        last.lo = lo_b;
        last.hi = r.hi;
        work.push_back(last);
        continue;
      }
      for (const auto& sr : ranges) {
        Piece piece;
        piece.kind = Piece::Kind::Interval;
        piece.point = p;
        piece.lo = sr.lo;
        piece.hi = sr.hi;
        out.push_back(piece);
      }
    }
    return out;
  }

  void solve_fixed(int p, const SideCtx& lc, const SideCtx& rc, const Rational& gamma,
                   std::vector<Piece>* out) {
    std::vector<FixedCase> Ls = fixed_side(lc, gamma);
    std::vector<FixedCase> Rs = fixed_side(rc, gamma);
    std::vector<FixedTruth> truths = fixed_truth(rel_, Ls, Rs);
    std::vector<KElem> contact_res;
    for (size_t q = 0; q < strata_->points.size(); ++q) {
      if (static_cast<int>(q) == p) continue;
      if (strata_->contact[p][static_cast<int>(q)] != gamma) continue;
      contact_res.push_back(diff_rv(*strata_, static_cast<int>(q), p).residue());
    }
    for (const auto& t : truths) {
      std::optional<std::vector<KElem>> include;
      bool dead = false;
      for (const auto& poly : t.must_vanish) {
        if (poly.is_zero()) continue;
        if (poly.degree() == 0) { dead = true; break; }
        std::vector<KElem> roots = residue_roots(poly);
        if (!include) {
          include = roots;
        } else {
          std::vector<KElem> inter;
          for (const auto& r : *include)
            if (std::find(roots.begin(), roots.end(), r) != roots.end()) inter.push_back(r);
          include = inter;
        }
        if (include->empty()) { dead = true; break; }
      }
      if (dead) continue;
      std::vector<KElem> exclude = contact_res;
      for (const auto& poly : t.must_not_vanish) {
        if (poly.is_zero()) { dead = true; break; }
        if (poly.degree() == 0) continue;
        for (const auto& r : residue_roots(poly)) exclude.push_back(r);
      }
      if (dead) continue;
      if (include) {
        Piece piece;
        piece.kind = Piece::Kind::FixedUValues;
        piece.point = p;
        piece.gamma = gamma;
        for (const auto& u : *include)
          if (std::find(exclude.begin(), exclude.end(), u) == exclude.end())
            piece.include_u.push_back(u);
        if (!piece.include_u.empty()) out->push_back(piece);
      } else {
        Piece piece;
        piece.kind = Piece::Kind::FixedAllU;
        piece.point = p;
        piece.gamma = gamma;
        piece.exclude_u = exclude;
        out->push_back(piece);
      }
    }
  }

  std::optional<Rv0> side_value_at_point(const FlatSide& side, int p) {
    auto rv_poly_at_p = [&](int poly, int e) -> Rv0 {
      auto it = strata_->points[p].mult.find(poly);
      if (it != strata_->points[p].mult.end() && it->second > 0)
        return Rv0::of(RvElem::infinity(field_));
      RvElem v = reg_.at(poly).leading().rv();
      for (size_t q = 0; q < strata_->points.size(); ++q) {
        if (static_cast<int>(q) == p) continue;
        auto qt = strata_->points[q].mult.find(poly);
        if (qt == strata_->points[q].mult.end() || qt->second == 0) continue;
        v = v * diff_rv(*strata_, p, static_cast<int>(q)).pow(qt->second);
      }
      return Rv0::of(v.pow(e));
    };
    std::optional<Rv0> acc = side.cst;
    for (const auto& [poly, e] : side.rvs) {
      if (!acc) return std::nullopt;
      acc = rv0_mul(*acc, rv_poly_at_p(poly, e));
    }
    for (const auto& sum : side.ksums) {
      if (!acc) return std::nullopt;
      std::vector<Rv0> vals;
      for (const auto& s : sum) {
        std::optional<Rv0> sv = s.coeff;
        for (const auto& [poly, e] : s.rvs) {
          if (!sv) break;
          sv = rv0_mul(*sv, rv_poly_at_p(poly, e));
        }
        if (!sv) return std::nullopt;
        vals.push_back(*sv);
      }
      auto total = k_term_sum(vals);
      if (!total) return std::nullopt;
      acc = rv0_mul(*acc, *total);
    }
    return acc;
  }

  bool point_truth(int p) {
    auto L = side_value_at_point(lhs_, p);
    auto R = side_value_at_point(rhs_, p);
    if (!L || !R) return false;
    switch (rel_) {
      case Literal::Rel::RvEq: return *L == *R;
      case Literal::Rel::RvNe: return !(*L == *R);
      case Literal::Rel::RvLe:
      case Literal::Rel::RvGt: {
        if (L->is_k_zero() || R->is_k_zero()) return false;
        bool le = RvElem::leq(L->rv(), R->rv());
        return rel_ == Literal::Rel::RvLe ? le : !le;
      }
      default: return false;
    }
  }

  SwissCheese point_cheese(int p) {
    const StratPoint& sp = strata_->points[p];
    if (!sp.exact)
      fail(ErrorKind::PrecisionNotReached,
           "a solution point has no finite expansion and cannot be represented exactly");
    return SwissCheese::of_point(sp.x);
  }

  Puiseux center_at(int p, const Rational& g) {
    const StratPoint& sp = strata_->points[p];
    if (!sp.exact && GammaValue::finite(g) > sp.x.precision()) throw NeedDeeper{g};
    return sp.x.truncate_above(GammaValue::finite(g), true).as_exact();
  }

  SwissCheese realize(const Piece& piece) {
    switch (piece.kind) {
      case Piece::Kind::Interval: {
        SwissCheese outer =
            piece.lo.has
                ? SwissCheese::of_ball(Ball::open(center_at(piece.point, piece.lo.value),
                                                  GammaValue::finite(piece.lo.value)))
                : SwissCheese::whole(field_);
        if (piece.hi.has) {
          Ball inner = Ball::closed(center_at(piece.point, piece.hi.value),
                                    GammaValue::finite(piece.hi.value));
          return outer.subtract(SwissCheese::of_ball(inner));
        }
        if (piece.include_point) return outer;
        const StratPoint& sp = strata_->points[piece.point];
        if (!sp.exact)
          fail(ErrorKind::PrecisionNotReached,
               "piece boundary needs an exact point with no finite expansion");
        return outer.subtract(SwissCheese::of_point(sp.x));
      }
      case Piece::Kind::FixedAllU: {
        Puiseux p0 = center_at(piece.point, piece.gamma);
        GammaValue g = GammaValue::finite(piece.gamma);
        SwissCheese sc = SwissCheese::of_ball(Ball::closed(p0, g))
                             .subtract(SwissCheese::of_ball(Ball::open(p0, g)));
        for (const auto& u : piece.exclude_u) {
          Puiseux c = p0 + Puiseux::monomial(u, piece.gamma);
          sc = sc.subtract(SwissCheese::of_ball(Ball::open(c, g)));
        }
        return sc;
      }
      case Piece::Kind::FixedUValues: {
        Puiseux p0 = center_at(piece.point, piece.gamma);
        GammaValue g = GammaValue::finite(piece.gamma);
        SwissCheese sc = SwissCheese::empty_set(field_);
        for (const auto& u : piece.include_u) {
          Puiseux c = p0 + Puiseux::monomial(u, piece.gamma);
          sc = sc.unite(SwissCheese::of_ball(Ball::open(c, g)));
        }
        return sc;
      }
    }
    return SwissCheese::empty_set(field_);
  }

  Literal lit_;
  std::string var_;
  FieldPtr field_;
  Budgets budgets_;
  PolyRegistry reg_;
  Literal::Rel rel_ = Literal::Rel::RvEq;
  FlatSide lhs_, rhs_;
  std::optional<Strata> strata_;
};

}  // namespace

SwissCheese solve_literal1(const Literal& lit, const std::string& var, const FieldPtr& f,
                           const Budgets& budgets) {
  LiteralSolver solver(lit, var, f, budgets);
  return solver.solve();
}

VfPoly vf_term_to_poly(const VfPtr& t, const std::string& var, const FieldPtr& f) {
  return to_vf_poly(t, var, f);
}

namespace detail {
std::vector<VfPoly> literal_polys(const Literal& lit, const std::string& var, const FieldPtr& f) {
  PolyRegistry reg(f);
  if (lit.rel == Literal::Rel::VfEq || lit.rel == Literal::Rel::VfNe) {
    VfPoly p = to_vf_poly(lit.vf, var, f);
    if (p.degree() >= 1) reg.add(p);
  } else {
    flatten_side(lit.lhs, var, &reg);
    flatten_side(lit.rhs, var, &reg);
  }
  return reg.all();
}
}  // namespace detail

}  // namespace rvkit
