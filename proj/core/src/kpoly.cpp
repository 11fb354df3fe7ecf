#include "rvkit/kpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "rvkit/errors.hpp"

namespace rvkit {

KPoly::KPoly(FieldPtr f, std::vector<KElem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
  normalize();
}

void KPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KPoly KPoly::constant(const KElem& c) {
  KPoly p(c.field());
  if (!c.is_zero()) p.c_ = {c};
  return p;
}

KPoly KPoly::monomial(const KElem& c, int degree) {
  KPoly p(c.field());
  if (c.is_zero()) return p;
  p.c_.assign(degree + 1, KElem::zero(c.field()));
  p.c_[degree] = c;
  return p;
}

KElem KPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return KElem::zero(field_);
  return c_[i];
}

KElem KPoly::eval(const KElem& x) const {
  KElem acc = KElem::zero(field_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

KPoly KPoly::derivative() const {
  KPoly d(field_);
  for (size_t i = 1; i < c_.size(); ++i)
    d.c_.push_back(c_[i].scale(Rational(static_cast<long>(i))));
  d.normalize();
  return d;
}

KPoly KPoly::monic() const {
  if (is_zero()) return *this;
  KElem li = leading().inv();
  KPoly m(field_);
  for (const auto& c : c_) m.c_.push_back(c * li);
  return m;
}

KPoly KPoly::operator+(const KPoly& o) const {
  KPoly r(field_);
  r.c_.assign(std::max(c_.size(), o.c_.size()), KElem::zero(field_));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
  r.normalize();
  return r;
}

KPoly KPoly::operator-(const KPoly& o) const {
  KPoly neg(o.field_.get() ? o.field_ : field_);
  neg.c_ = o.c_;
  for (auto& c : neg.c_) c = -c;
  return *this + neg;
}

KPoly KPoly::operator*(const KPoly& o) const {
  if (is_zero() || o.is_zero()) return KPoly(field_);
  KPoly r(field_);
  r.c_.assign(c_.size() + o.c_.size() - 1, KElem::zero(field_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  }
  r.normalize();
  return r;
}

std::pair<KPoly, KPoly> KPoly::divmod(const KPoly& d) const {
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  KPoly q(field_), rem = *this;
  if (degree() < d.degree()) return {q, rem};
  q.c_.assign(degree() - d.degree() + 1, KElem::zero(field_));
  KElem li = d.leading().inv();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int k = rem.degree() - d.degree();
    KElem c = rem.leading() * li;
    q.c_[k] = q.c_[k] + c;
    for (int i = 0; i <= d.degree(); ++i)
      rem.c_[k + i] = rem.c_[k + i] - c * d.c_[i];
    rem.normalize();
  }
  q.normalize();
  return {q, rem};
}

KPoly KPoly::gcd(const KPoly& a, const KPoly& b) {
  KPoly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = x.divmod(y);
    (void)q;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

std::string KPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      first = false;
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    bool needs_parens = cs.find(' ') != std::string::npos;
    if (i == 0) {
      os << (needs_parens ? "(" + cs + ")" : cs);
    } else {
      if (!(cs == "1")) os << (needs_parens ? "(" + cs + ")" : cs) << "*";
      os << "Y";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// rational root candidates of a nonzero ℚ[y] polynomial given as KElem
// rational parts; classic p/q enumeration with a divisor cap
std::vector<Rational> rational_candidates(const std::vector<Rational>& coeffs) {
  std::vector<Rational> out;
  size_t lo = 0, hi = coeffs.size();
  while (lo < hi && coeffs[lo].is_zero()) ++lo;
  while (hi > lo && coeffs[hi - 1].is_zero()) --hi;
  if (lo >= hi) return out;
  mpz_class lcm = 1;
  for (size_t i = lo; i < hi; ++i)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coeffs[i].den().get_mpz_t());
  mpz_class a0 = coeffs[lo].num() * (lcm / coeffs[lo].den());
  mpz_class an = coeffs[hi - 1].num() * (lcm / coeffs[hi - 1].den());
  auto divisors = [](mpz_class n) {
    std::vector<mpz_class> ds;
    n = abs(n);
    for (mpz_class d = 1; d * d <= n && ds.size() < 2048; ++d)
      if (n % d == 0) { ds.push_back(d); ds.push_back(n / d); }
    return ds;
  };
  for (const auto& p : divisors(a0))
    for (const auto& q : divisors(an)) {
      Rational c{mpq_class(mpq_class(p) / mpq_class(q))};
      out.push_back(c);
      out.push_back(-c);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// roots of a squarefree monic factor; absent roots stay in `unresolved`
void roots_of_squarefree(const KPoly& g, std::vector<KElem>* roots,
                         std::vector<KPoly>* unresolved) {
  const FieldPtr& f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    roots->push_back(-g.coeff(0));
    return;
  }
  if (g.degree() == 2) {
    // discriminant membership decides
    KElem b = g.coeff(1), c = g.coeff(0);
    KElem disc = b * b - c.scale(Rational(4));
    KElem sq;
    if (disc.sqrt(&sq)) {
      KElem half = KElem::of(f, Rational(1, 2));
      roots->push_back((-b + sq) * half);
      roots->push_back((-b - sq) * half);
    } else {
      unresolved->push_back(g);
    }
    return;
  }
  // degree >= 3: trial division over rational-root candidates, including
  // small generator multiples
  std::vector<Rational> comp0;
  for (const auto& ke : g.coeffs()) comp0.push_back(ke.rational_part());
  bool all_rational = true;
  for (const auto& ke : g.coeffs())
    if (!ke.is_rational()) { all_rational = false; break; }
  std::vector<KElem> candidates;
  for (const auto& r : rational_candidates(comp0)) candidates.push_back(KElem::of(f, r));
  if (!all_rational || f->degree() > 1) {
    KElem y = KElem::generator(f);
    size_t n = candidates.size();
    for (size_t i = 0; i < n; ++i) candidates.push_back(candidates[i] * y);
  }
  KPoly rest = g;
  bool progress = true;
  while (progress && rest.degree() > 0) {
    progress = false;
    for (const auto& cand : candidates) {
      if (rest.degree() <= 0) break;
      if (!rest.eval(cand).is_zero()) continue;
      KPoly lin(f, {-cand, KElem::one(f)});
      auto [q, r] = rest.divmod(lin);
      assert(r.is_zero());
      roots->push_back(cand);
      rest = q;
      progress = true;
    }
    if (rest.degree() == 2 || rest.degree() == 1) {
      roots_of_squarefree(rest, roots, unresolved);
      return;
    }
  }
  if (rest.degree() > 0) unresolved->push_back(rest);
}

}  // namespace

KPolyRoots k_poly_roots(const KPoly& p) {
  if (p.is_zero()) fail(ErrorKind::PreconditionViolated, "k_poly_roots of the zero polynomial");
  KPolyRoots out;
  out.leading = p.leading();
  const FieldPtr& f = p.field();
  KPoly w = p.monic();
  // X^k factor
  int ord = 0;
  while (w.coeff(0).is_zero() && w.degree() > 0) {
    auto [q, r] = w.divmod(KPoly::monomial(KElem::one(f), 1));
    assert(r.is_zero());
    w = q;
    ++ord;
  }
  if (ord > 0) out.roots.push_back({KElem::zero(f), ord});
  if (w.degree() > 0) {
    // roots of the radical, each divided out of w with full multiplicity
    KPoly radical = w.divmod(KPoly::gcd(w, w.derivative())).first.monic();
    std::vector<KElem> roots;
    std::vector<KPoly> dropped;
    roots_of_squarefree(radical, &roots, &dropped);
    for (const auto& r : roots) {
      KPoly lin(f, {-r, KElem::one(f)});
      int m = 0;
      while (true) {
        auto [q, rem] = w.divmod(lin);
        if (!rem.is_zero()) break;
        w = q;
        ++m;
      }
      assert(m > 0);
      out.roots.push_back({r, m});
    }
  }
  // leftover has no root we can resolve; present it as radical powers so the
  // reconstruction product is exact
  while (w.degree() > 0) {
    KPoly radical = w.divmod(KPoly::gcd(w, w.derivative())).first.monic();
    out.unresolved.push_back(radical);
    auto [q, rem] = w.divmod(radical);
    assert(rem.is_zero());
    w = q;
  }
  return out;
}

}  // namespace rvkit
