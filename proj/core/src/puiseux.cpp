#include "rvkit/puiseux.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "rvkit/errors.hpp"
#include "rvkit/rv_value.hpp"

namespace rvkit {

void Puiseux::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Rational, KElem>> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second = merged.back().second + t.second;
    else
      merged.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : merged) {
    if (t.second.is_zero()) continue;
    if (!prec_.is_plus_inf() && GammaValue::finite(t.first) > prec_) continue;
    terms_.push_back(std::move(t));
  }
}

Puiseux Puiseux::constant(const KElem& c) {
  Puiseux p(c.field());
  if (!c.is_zero()) p.terms_.push_back({Rational(0), c});
  return p;
}

Puiseux Puiseux::monomial(const KElem& c, const Rational& exponent) {
  Puiseux p(c.field());
  if (!c.is_zero()) p.terms_.push_back({exponent, c});
  return p;
}

Puiseux Puiseux::from_terms(const FieldPtr& f, std::vector<std::pair<Rational, KElem>> terms,
                            GammaValue precision) {
  Puiseux p(f);
  p.terms_ = std::move(terms);
  p.prec_ = precision;
  p.normalize();
  return p;
}

GammaValue Puiseux::val() const {
  if (terms_.empty()) {
    if (exact()) return GammaValue::plus_inf();
    fail(ErrorKind::InsufficientPrecision,
         "valuation of a truncated zero (known only modulo exponents > " +
             prec_.to_string() + ")");
  }
  return GammaValue::finite(terms_.front().first);
}

KElem Puiseux::leading_coeff() const {
  val();  // force the precision check
  return terms_.front().second;
}

RvElem Puiseux::rv() const {
  if (terms_.empty()) {
    if (exact()) return RvElem::infinity(field_);
    fail(ErrorKind::InsufficientPrecision, "rv of a truncated zero");
  }
  return RvElem::unit(terms_.front().first, terms_.front().second);
}

KElem Puiseux::coeff_at(const Rational& e) const {
  for (const auto& t : terms_)
    if (t.first == e) return t.second;
  return KElem::zero(field_);
}

Puiseux Puiseux::operator-() const {
  Puiseux r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Puiseux Puiseux::operator+(const Puiseux& o) const {
  Puiseux r(field_ ? field_ : o.field_);
  r.prec_ = min(prec_, o.prec_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

Puiseux Puiseux::operator-(const Puiseux& o) const { return *this + (-o); }

namespace {
// least exponent that could be present: first visible term, else the
// precision bound for truncated zeros, else +inf for the exact zero
GammaValue vlow(const Puiseux& x) {
  if (!x.terms().empty()) return GammaValue::finite(x.terms().front().first);
  return x.exact() ? GammaValue::plus_inf() : x.precision();
}
}  // namespace

Puiseux Puiseux::operator*(const Puiseux& o) const {
  Puiseux r(field_ ? field_ : o.field_);
  r.prec_ = min(prec_ + vlow(o), o.prec_ + vlow(*this));
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      r.terms_.push_back({a.first + b.first, a.second * b.second});
  r.normalize();
  return r;
}

Puiseux Puiseux::scale(const KElem& c) const {
  if (c.is_zero()) return zero(field_);
  Puiseux r = *this;
  for (auto& t : r.terms_) t.second = t.second * c;
  return r;
}

Puiseux Puiseux::shift(const Rational& e) const {
  Puiseux r = *this;
  for (auto& t : r.terms_) t.first = t.first + e;
  if (!r.prec_.is_plus_inf()) r.prec_ = r.prec_ + GammaValue::finite(e);
  return r;
}

Puiseux Puiseux::pow(int n) const {
  assert(n >= 0);
  Puiseux acc = one(field_);
  for (int i = 0; i < n; ++i) acc = acc * *this;
  return acc;
}

Puiseux Puiseux::inv(const Rational& target) const {
  if (is_exact_zero()) fail(ErrorKind::DivisionByZero, "inverse of 0 in VF");
  if (terms_.empty())
    fail(ErrorKind::InsufficientPrecision, "inverse of a truncated zero");
  Rational v = terms_.front().first;
  KElem lead = terms_.front().second;
  // a = lead t^v (1 + u), v(u) > 0
  Puiseux unitpart = shift(-v).scale(lead.inv());
  Puiseux u = unitpart - one(field_);
  // required tail precision of the inverse of the unit part
  Rational tail = target - (-v) - v;  // inverse has valuation -v; mul check to `target`
  GammaValue needed = GammaValue::finite(target + v);
  if (u.is_exact_zero()) {
    // exact monomial inverse
    return monomial(lead.inv(), -v);
  }
  GammaValue cap = prec_.is_plus_inf() ? GammaValue::plus_inf()
                                       : prec_ + GammaValue::finite(-v);
  Puiseux geo = one(field_);
  Puiseux upow = one(field_);
  GammaValue uval = u.terms_.empty() ? u.prec_ : GammaValue::finite(u.terms_.front().first);
  int guard = 0;
  while (true) {
    upow = upow * (-u);
    if (upow.is_exact_zero()) break;
    geo = geo + upow;
    GammaValue low = vlow(upow);
    if (low > needed) break;
    if (++guard > 4096)
      fail(ErrorKind::PrecisionNotReached, "inverse series did not reach target precision");
  }
  (void)uval; (void)tail;
  Puiseux res = geo.scale(lead.inv()).shift(-v);
  GammaValue final_prec = min(cap, needed);
  if (!upow.is_exact_zero() || !prec_.is_plus_inf())
    res = res.truncate_above(final_prec, true), res.prec_ = final_prec;
  return res;
}

Puiseux Puiseux::truncate_above(const GammaValue& g, bool keep_equal) const {
  Puiseux r(field_);
  for (const auto& t : terms_) {
    GammaValue e = GammaValue::finite(t.first);
    if (e < g || (keep_equal && e == g)) r.terms_.push_back(t);
  }
  r.prec_ = prec_;
  if (keep_equal) r.prec_ = min(prec_, g);
  return r;
}

Puiseux Puiseux::as_exact() const {
  Puiseux r = *this;
  r.prec_ = GammaValue::plus_inf();
  return r;
}

bool Puiseux::operator<(const Puiseux& o) const {
  size_t n = std::min(terms_.size(), o.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    if (terms_[i].first < o.terms_[i].first) return true;
    if (o.terms_[i].first < terms_[i].first) return false;
    if (terms_[i].second < o.terms_[i].second) return true;
    if (o.terms_[i].second < terms_[i].second) return false;
  }
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
  return prec_ < o.prec_;
}

std::string Puiseux::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string cs = c.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    bool compound = cs.find(' ') != std::string::npos;
    if (first) {
      first = false;
    } else {
      os << (neg && !compound ? " - " : " + ");
      if (neg && !compound) cs = cs.substr(1);
    }
    std::string coeff = compound ? "(" + cs + ")" : cs;
    if (e.is_zero()) {
      os << coeff;
    } else {
      if (coeff == "1") {}
      else if (coeff == "-1") os << "-";
      else os << coeff << "*";
      os << "t";
      if (e != Rational(1)) {
        if (e.is_integer() && e.sign() > 0) os << "^" << e.to_string();
        else os << "^(" << e.to_string() << ")";
      }
    }
  }
  if (first) os << "0";
  if (!exact()) os << " + O(t^>" << prec_.to_string() << ")";
  return os.str();
}

Puiseux average(const std::vector<Puiseux>& points) {
  if (points.empty()) fail(ErrorKind::PreconditionViolated, "average of an empty set");
  Puiseux sum = Puiseux::zero(points.front().field());
  for (const auto& p : points) sum = sum + p;
  return sum.scale(KElem::of(sum.field(), Rational(1, static_cast<long>(points.size()))));
}

}  // namespace rvkit
