#include "rvkit/newton.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "rvkit/errors.hpp"

namespace rvkit {

VfPoly::VfPoly(FieldPtr f, std::vector<Puiseux> coeffs)
    : field_(std::move(f)), c_(std::move(coeffs)) {
  normalize();
}

void VfPoly::normalize() {
  while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

VfPoly VfPoly::constant(const Puiseux& c) {
  VfPoly p(c.field());
  if (!c.is_exact_zero()) p.c_ = {c};
  return p;
}

VfPoly VfPoly::variable(const FieldPtr& f) {
  return VfPoly(f, {Puiseux::zero(f), Puiseux::one(f)});
}

VfPoly VfPoly::monomial(const Puiseux& c, int degree) {
  VfPoly p(c.field());
  if (c.is_exact_zero()) return p;
  p.c_.assign(degree + 1, Puiseux::zero(c.field()));
  p.c_[degree] = c;
  return p;
}

Puiseux VfPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Puiseux::zero(field_);
  return c_[i];
}

Puiseux VfPoly::eval(const Puiseux& x) const {
  Puiseux acc = Puiseux::zero(field_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

VfPoly VfPoly::derivative() const {
  VfPoly d(field_);
  for (size_t i = 1; i < c_.size(); ++i)
    d.c_.push_back(c_[i].scale(KElem::of(field_, Rational(static_cast<long>(i)))));
  d.normalize();
  return d;
}

VfPoly VfPoly::shift(const Puiseux& c) const {
  if (c_.empty()) return VfPoly(field_);
  // binomial expansion; degrees stay small here
  int n = degree();
  std::vector<Puiseux> res(n + 1, Puiseux::zero(field_));
  std::vector<std::vector<Rational>> binom(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  for (int i = 0; i <= n; ++i) {
    binom[i][0] = Rational(1);
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rational(0));
  }
  for (int i = 0; i <= n; ++i) {
    if (c_[i].is_exact_zero()) continue;
    Puiseux cpow = Puiseux::one(field_);
    for (int k = i; k >= 0; --k) {
      // coefficient of X^k in c_[i] (X + c)^i is C(i,k) c^{i-k}
      res[k] = res[k] + c_[i].scale(KElem::of(field_, binom[i][k])) * cpow;
      if (k > 0) cpow = cpow * c;
    }
  }
  return VfPoly(field_, std::move(res));
}

VfPoly VfPoly::scale_arg(const Puiseux& c) const {
  VfPoly r(field_);
  r.c_ = c_;
  Puiseux pw = Puiseux::one(field_);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    r.c_[i] = r.c_[i] * pw;
    pw = pw * c;
  }
  r.normalize();
  return r;
}

VfPoly VfPoly::operator+(const VfPoly& o) const {
  VfPoly r(field_ ? field_ : o.field_);
  r.c_.assign(std::max(c_.size(), o.c_.size()), Puiseux::zero(r.field_));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
  r.normalize();
  return r;
}

VfPoly VfPoly::operator-(const VfPoly& o) const {
  VfPoly neg = o.scale(-Puiseux::one(o.field_ ? o.field_ : field_));
  return *this + neg;
}

VfPoly VfPoly::operator*(const VfPoly& o) const {
  if (is_zero() || o.is_zero()) return VfPoly(field_ ? field_ : o.field_);
  VfPoly r(field_);
  r.c_.assign(c_.size() + o.c_.size() - 1, Puiseux::zero(field_));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  r.normalize();
  return r;
}

VfPoly VfPoly::scale(const Puiseux& c) const {
  VfPoly r(field_);
  for (const auto& x : c_) r.c_.push_back(x * c);
  r.normalize();
  return r;
}

std::string VfPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = c_[i].to_string();
    bool compound = cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos;
    if (i == 0) os << (compound ? "(" + cs + ")" : cs);
    else {
      if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

NewtonPolygon newton_polygon(const VfPoly& F) {
  if (F.is_zero())
    fail(ErrorKind::PreconditionViolated, "newton polygon of the zero polynomial");
  // points (i, v(b_i)) for nonzero coefficients; truncated zeros are
  // indeterminate
  std::vector<std::pair<int, Rational>> pts;
  int first_nonzero = -1;
  for (int i = 0; i <= F.degree(); ++i) {
    const Puiseux& b = F.coeff(i);
    if (b.is_exact_zero()) continue;
    if (b.is_truncated_zero())
      fail(ErrorKind::InsufficientPrecision,
           "coefficient " + std::to_string(i) + " is a truncated zero");
    if (first_nonzero < 0) first_nonzero = i;
    pts.push_back({i, b.val().value()});
  }
  NewtonPolygon np;
  np.order_at_zero = first_nonzero;
  // lower convex hull, left to right, slopes strictly increasing
  std::vector<std::pair<int, Rational>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // keep b if slope(a,b) < slope(a,p); drop when b is above or on the chord
      Rational lhs = (b.second - a.second) * Rational(p.first - a.first);
      Rational rhs = (p.second - a.second) * Rational(b.first - a.first);
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  np.vertices = hull;
  const FieldPtr& f = F.field();
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    NewtonSegment seg;
    seg.left_index = hull[s].first;
    seg.right_index = hull[s + 1].first;
    seg.left_val = hull[s].second;
    seg.right_val = hull[s + 1].second;
    seg.length = seg.right_index - seg.left_index;
    seg.slope = (seg.right_val - seg.left_val) / Rational(seg.length);
    // residual: residues of the on-segment coefficients, right vertex scaled
    // to 1
    KElem lead = F.coeff(seg.right_index).leading_coeff();
    KElem lead_inv = lead.inv();
    std::vector<KElem> rc(seg.length + 1, KElem::zero(f));
    for (int i = seg.left_index; i <= seg.right_index; ++i) {
      const Puiseux& b = F.coeff(i);
      if (b.is_exact_zero()) continue;
      Rational on_line = seg.left_val + seg.slope * Rational(i - seg.left_index);
      if (b.val().value() != on_line) continue;
      rc[i - seg.left_index] = b.leading_coeff() * lead_inv;
    }
    seg.residual = KPoly(f, std::move(rc));
    np.segments.push_back(std::move(seg));
  }
  return np;
}

std::vector<std::pair<GammaValue, int>> root_valuations(const VfPoly& F) {
  NewtonPolygon np = newton_polygon(F);
  std::vector<std::pair<GammaValue, int>> out;
  for (const auto& seg : np.segments)
    out.push_back({GammaValue::finite(-seg.slope), seg.length});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (np.order_at_zero > 0) out.push_back({GammaValue::plus_inf(), np.order_at_zero});
  return out;
}

RootClasses root_rv_classes(const VfPoly& F) {
  NewtonPolygon np = newton_polygon(F);
  RootClasses out;
  out.zero_root_multiplicity = np.order_at_zero;
  for (const auto& seg : np.segments) {
    KPolyRoots rr = k_poly_roots(seg.residual);
    Rational valuation = -seg.slope;
    for (const auto& [u, m] : rr.roots) {
      if (u.is_zero()) continue;  // residuals have nonzero endpoints; defensive
      out.classes.push_back({RvElem::unit(valuation, u), m});
    }
    for (const auto& fac : rr.unresolved)
      out.unresolved.push_back({valuation, fac});
  }
  return out;
}

namespace {

// Newton refinement of a simple root of F from a seed inside its class.
// Exact arithmetic throughout: truncated corrections are re-exactified, so
// every valuation below is certain.
RootExpansion newton_refine(const VfPoly& F, Puiseux x, const Rational& prec, int step_cap) {
  VfPoly dF = F.derivative();
  for (int step = 0; step < step_cap; ++step) {
    Puiseux fx = F.eval(x);
    if (fx.is_exact_zero()) {
      RootExpansion r{x, 1, true};
      return r;
    }
    Puiseux dfx = dF.eval(x);
    if (!dfx.known_nonzero())
      fail(ErrorKind::PrecisionNotReached, "derivative vanished during refinement");
    GammaValue err = fx.val() + GammaValue::finite(-dfx.val().value());
    Rational inv_target = prec * Rational(2) + Rational(8) - dfx.val().value();
    Puiseux delta = fx * dfx.inv(inv_target);
    if (err > GammaValue::finite(prec)) {
      // one more step often lands exactly on a terminating root; otherwise
      // report the truncation honestly
      Puiseux candidate = (x - delta.as_exact());
      if (F.eval(candidate).is_exact_zero()) return RootExpansion{candidate, 1, true};
      Puiseux trimmed = x.truncate_above(GammaValue::finite(prec), true);
      trimmed = Puiseux::from_terms(x.field(), trimmed.terms(), GammaValue::finite(prec));
      return RootExpansion{trimmed, 1, false};
    }
    x = (x - delta.as_exact());
  }
  fail(ErrorKind::PrecisionNotReached,
       "newton refinement did not reach precision " + prec.to_string());
}

void np_walk(const VfPoly& F, const VfPoly& S, const Puiseux& base,
             const std::optional<Rational>& last_exp, const Rational& prec,
             int step_cap, int depth, std::vector<RootExpansion>* out) {
  if (depth > step_cap)
    fail(ErrorKind::PrecisionNotReached,
         "newton-puiseux recursion exceeded the step cap (repeated or very close roots)");
  NewtonPolygon np = newton_polygon(S);
  if (np.order_at_zero > 0)
    out->push_back(RootExpansion{base, np.order_at_zero, true});
  const FieldPtr& f = F.field();
  for (const auto& seg : np.segments) {
    Rational gamma = -seg.slope;
    if (last_exp && !(gamma > *last_exp)) continue;
    KPolyRoots rr = k_poly_roots(seg.residual);
    if (!rr.unresolved.empty())
      fail(ErrorKind::ExtensionRequired,
           "residual factor " + rr.unresolved.front().to_string() +
               " (root valuation " + gamma.to_string() + ") has no root in K");
    for (const auto& [u, m] : rr.roots) {
      if (u.is_zero()) continue;
      Puiseux x1 = base + Puiseux::monomial(u, gamma);
      if (m == 1) {
        out->push_back(newton_refine(F, x1, prec, step_cap));
      } else {
        VfPoly S1 = S.shift(Puiseux::monomial(u, gamma));
        np_walk(F, S1, x1, gamma, prec, step_cap, depth + 1, out);
      }
    }
  }
  (void)f;
}

}  // namespace

std::vector<RootExpansion> puiseux_roots(const VfPoly& F, const Rational& prec, int step_cap) {
  if (F.is_zero())
    fail(ErrorKind::PreconditionViolated, "roots of the zero polynomial");
  for (const auto& c : F.coeffs())
    if (!c.exact() && !c.is_exact_zero())
      fail(ErrorKind::InsufficientPrecision, "root expansion needs exact coefficients");
  std::vector<RootExpansion> out;
  if (F.degree() == 0) return out;
  np_walk(F, F, Puiseux::zero(F.field()), std::nullopt, prec, step_cap, 0, &out);
  // sanity: multiplicities account for the degree
  int total = 0;
  for (const auto& r : out) total += r.multiplicity;
  assert(total == F.degree());
  return out;
}

Puiseux rv_lift_root(const VfPoly& F, const RvElem& t, const Rational& precision,
                     const std::optional<std::vector<int>>& keep, int step_cap) {
  if (F.is_zero() || F.degree() == 0)
    fail(ErrorKind::PreconditionViolated, "rv_lift_root needs a nonconstant polynomial");
  if (t.is_infinity())
    fail(ErrorKind::HypothesisViolated,
         "t = INF: the projected polynomial would be a monomial in t");
  const Rational& gamma = t.gamma();
  // levels of the summands rv(b_i) t^i after normalizing the minimum to 0
  std::vector<int> support;
  std::optional<Rational> mu;
  for (int i = 0; i <= F.degree(); ++i) {
    const Puiseux& b = F.coeff(i);
    if (b.is_exact_zero()) continue;
    Rational level = b.val().value() + gamma * Rational(i);
    if (!mu || level < *mu) mu = level;
  }
  std::vector<int> level_set;
  for (int i = 0; i <= F.degree(); ++i) {
    const Puiseux& b = F.coeff(i);
    if (b.is_exact_zero()) continue;
    Rational level = b.val().value() + gamma * Rational(i);
    if (level == *mu) level_set.push_back(i);
  }
  std::vector<int> kept = keep ? *keep : level_set;
  std::sort(kept.begin(), kept.end());
  if (keep) {
    // user-supplied support: every kept summand must sit at one common level,
    // every dropped one strictly above it
    std::optional<Rational> klevel;
    for (int i : kept) {
      const Puiseux& b = F.coeff(i);
      if (b.is_exact_zero())
        fail(ErrorKind::HypothesisViolated,
             "kept index " + std::to_string(i) + " has zero coefficient");
      Rational level = b.val().value() + gamma * Rational(i);
      if (!klevel) klevel = level;
      else if (*klevel != level)
        fail(ErrorKind::HypothesisViolated,
             "kept summands are not of one value (indices " + std::to_string(kept.front()) +
                 ", " + std::to_string(i) + ")");
    }
    for (int i = 0; i <= F.degree(); ++i) {
      if (F.coeff(i).is_exact_zero()) continue;
      if (std::binary_search(kept.begin(), kept.end(), i)) continue;
      Rational level = F.coeff(i).val().value() + gamma * Rational(i);
      if (!(level > *klevel))
        fail(ErrorKind::HypothesisViolated,
             "dropped coefficient " + std::to_string(i) +
                 " does not satisfy vrv(rv(b_i) t^i) > 0 after normalization");
    }
  }
  if (kept.size() < 2)
    fail(ErrorKind::HypothesisViolated, "projected polynomial is a monomial");
  // vanishing of the projected polynomial: residues at the common level sum
  // to zero against powers of the residue of t
  KElem sum = KElem::zero(F.field());
  for (int i : kept)
    sum = sum + F.coeff(i).leading_coeff() * t.residue().pow(i);
  if (!sum.is_zero())
    fail(ErrorKind::HypothesisViolated,
         "projected polynomial does not vanish at t (residue sum " + sum.to_string() + ")");
  // hypotheses hold; lift along the segment of slope -vrv(t)
  std::vector<RootExpansion> roots;
  Rational prec = rvkit::max(precision, gamma + Rational(1));
  roots = puiseux_roots(F, prec, step_cap);
  for (const auto& r : roots) {
    if (r.value.is_exact_zero()) continue;
    if (!(r.value.rv() == t)) continue;
    Puiseux b = r.value;
    if (!r.exact) {
      // push v(F(b)) past the requested precision
      RootExpansion refined = newton_refine(F, b.as_exact(), prec, step_cap);
      b = refined.value;
      int guard = 0;
      while (true) {
        Puiseux fb = F.eval(b.as_exact());
        if (fb.is_exact_zero() || fb.val() > GammaValue::finite(precision)) break;
        Rational deeper = (fb.val().value() + Rational(1)) * Rational(2) + precision;
        refined = newton_refine(F, b.as_exact(), deeper, step_cap);
        b = refined.value;
        if (++guard > step_cap)
          fail(ErrorKind::PrecisionNotReached, "could not push v(F(b)) past the target");
      }
    }
    return b;
  }
  fail(ErrorKind::NoRootInClass, "no root with rv-class " + t.to_string() +
                                     " (hypotheses were satisfied; this is a bug)");
}

RvElem rv_on_ball(const VfPoly& F, const Ball& b) {
  if (F.is_zero())
    fail(ErrorKind::PreconditionViolated, "rv on a ball of the zero polynomial");
  if (b.is_point()) {
    Puiseux v = F.eval(b.center());
    if (v.is_exact_zero())
      fail(ErrorKind::PreconditionViolated, "ball contains a root of F");
    return v.rv();
  }
  if (!b.rv_class())
    fail(ErrorKind::PreconditionViolated, "ball straddles rv-balls");
  // no root of F inside b
  if (F.degree() >= 1) {
    Rational guard = b.radius().is_finite() ? b.radius().value() + Rational(1) : Rational(1);
    for (const auto& r : puiseux_roots(F, guard)) {
      if (b.contains(r.value))
        fail(ErrorKind::PreconditionViolated,
             "ball contains the root " + r.value.to_string());
    }
  }
  return F.eval(b.center()).rv();
}

}  // namespace rvkit
