#include "rvkit/number_field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "rvkit/errors.hpp"

namespace rvkit {
namespace {

// Rational roots of y^d + tail, by the rational root theorem on the cleared
// integer polynomial. Divisor enumeration is capped; moduli are small
// user-declared polynomials, so the cap is generous.
std::vector<Rational> rational_roots_of_monic(const std::vector<Rational>& tail) {
  std::vector<Rational> out;
  if (tail.empty()) return out;
  if (tail[0].is_zero()) out.push_back(Rational(0));
  // clear denominators: p(y) = y^d + sum tail[i] y^i, multiply by lcm of dens
  mpz_class lcm = 1;
  for (const auto& q : tail) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.den().get_mpz_t());
  std::vector<mpz_class> ic(tail.size() + 1);
  ic[tail.size()] = lcm;
  for (size_t i = 0; i < tail.size(); ++i) ic[i] = tail[i].num() * (lcm / tail[i].den());
  mpz_class a0 = ic[0], an = ic[tail.size()];
  if (a0 == 0) {
    // shift out the zero root once, candidates from the next coefficient
    size_t k = 0;
    while (k < ic.size() && ic[k] == 0) ++k;
    if (k >= ic.size() - 1) return out;
    a0 = ic[k];
  }
  auto divisors = [](mpz_class n) {
    std::vector<mpz_class> ds;
    n = abs(n);
    for (mpz_class d = 1; d * d <= n && ds.size() < 4096; ++d)
      if (n % d == 0) { ds.push_back(d); ds.push_back(n / d); }
    return ds;
  };
  auto eval = [&](const Rational& r) {
    Rational acc(0);
    for (size_t i = ic.size(); i-- > 0;)
      acc = acc * r + Rational(mpq_class(ic[i]));
    return acc.is_zero();
  };
  for (const auto& p : divisors(a0))
    for (const auto& q : divisors(an)) {
      Rational cand{mpq_class(mpq_class(p) / mpq_class(q))};
      for (int s = 0; s < 2; ++s) {
        Rational r = s ? -cand : cand;
        if (eval(r) && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
    }
  return out;
}

}  // namespace

FieldPtr NumberField::create(std::vector<Rational> tail) {
  if (tail.empty()) fail(ErrorKind::TypeError, "number field modulus must have degree >= 1");
  if (tail.size() >= 2) {
    auto roots = rational_roots_of_monic(tail);
    if (!roots.empty())
      fail(ErrorKind::TypeError,
           "declared modulus has rational root " + roots[0].to_string() + ", not irreducible");
  }
  return FieldPtr(new NumberField(std::move(tail)));
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = FieldPtr(new NumberField({Rational(0)}));
  return q;
}

std::string NumberField::modulus_string() const {
  std::ostringstream os;
  os << "y^" << degree();
  for (size_t i = tail_.size(); i-- > 0;) {
    if (tail_[i].is_zero()) continue;
    os << (tail_[i].sign() > 0 ? " + " : " - ");
    Rational a = tail_[i].sign() > 0 ? tail_[i] : -tail_[i];
    if (i == 0) os << a.to_string();
    else if (a == Rational(1)) os << "y" << (i > 1 ? "^" + std::to_string(i) : "");
    else os << a.to_string() << "*y" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

KElem KElem::zero(const FieldPtr& f) {
  KElem e;
  e.field_ = f;
  e.c_.assign(f->degree(), Rational(0));
  return e;
}

KElem KElem::one(const FieldPtr& f) { return of(f, Rational(1)); }

KElem KElem::of(const FieldPtr& f, Rational q) {
  KElem e = zero(f);
  e.c_[0] = std::move(q);
  return e;
}

KElem KElem::generator(const FieldPtr& f) {
  KElem e = zero(f);
  if (f->degree() == 1) {
    // y ≡ -tail[0]; for K = ℚ the generator is 0
    e.c_[0] = -f->modulus_tail()[0];
  } else {
    e.c_[1] = Rational(1);
  }
  return e;
}

KElem KElem::from_coeffs(const FieldPtr& f, std::vector<Rational> coeffs) {
  if (static_cast<int>(coeffs.size()) > f->degree())
    fail(ErrorKind::TypeError, "KElem coefficient vector longer than field degree");
  KElem e = zero(f);
  for (size_t i = 0; i < coeffs.size(); ++i) e.c_[i] = std::move(coeffs[i]);
  return e;
}

bool KElem::is_zero() const {
  for (const auto& q : c_)
    if (!q.is_zero()) return false;
  return true;
}

bool KElem::is_one() const {
  if (c_.empty() || c_[0] != Rational(1)) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

bool KElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational KElem::rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

KElem KElem::operator-() const {
  KElem r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

KElem KElem::operator+(const KElem& o) const {
  assert(field_ && o.field_ && field_->same(*o.field_));
  KElem r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

KElem KElem::operator-(const KElem& o) const { return *this + (-o); }

KElem KElem::operator*(const KElem& o) const {
  assert(field_ && o.field_ && field_->same(*o.field_));
  int d = field_->degree();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j].is_zero()) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  // reduce modulo y^d = -tail
  const auto& tail = field_->modulus_tail();
  for (int k = 2 * d - 2; k >= d; --k) {
    if (prod[k].is_zero()) continue;
    Rational lead = prod[k];
    prod[k] = Rational(0);
    for (int i = 0; i < d; ++i) prod[k - d + i] -= lead * tail[i];
  }
  prod.resize(d);
  KElem r;
  r.field_ = field_;
  r.c_ = std::move(prod);
  return r;
}

KElem KElem::scale(const Rational& q) const {
  KElem r = *this;
  for (auto& x : r.c_) x *= q;
  return r;
}

KElem KElem::inv() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of 0 in K");
  int d = field_->degree();
  if (d == 1) return of(field_, Rational(1) / c_[0]);
  // extended Euclid in ℚ[y] for gcd(a, m) with m the modulus
  using Poly = std::vector<Rational>;
  auto deg = [](const Poly& p) {
    int dd = static_cast<int>(p.size()) - 1;
    while (dd >= 0 && p[dd].is_zero()) --dd;
    return dd;
  };
  Poly m(field_->modulus_tail());
  m.push_back(Rational(1));
  Poly a(c_.begin(), c_.end());
  Poly r0 = m, r1 = a;
  Poly s0 = {Rational(0)}, s1 = {Rational(1)};  // coefficients of a
  auto sub_scaled = [&](Poly& x, const Poly& y, const Rational& c, int shift) {
    if (x.size() < y.size() + shift) x.resize(y.size() + shift, Rational(0));
    for (size_t i = 0; i < y.size(); ++i) x[i + shift] -= c * y[i];
  };
  while (deg(r1) > 0) {
    // divide r0 by r1
    Poly q(std::max<size_t>(1, deg(r0) - deg(r1) + 1), Rational(0));
    Poly rem = r0;
    int d1 = deg(r1);
    while (deg(rem) >= d1) {
      int dr = deg(rem);
      Rational c = rem[dr] / r1[d1];
      q[dr - d1] = c;
      sub_scaled(rem, r1, c, dr - d1);
    }
    // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q s1)
    Poly s2 = s0;
    for (size_t i = 0; i < q.size(); ++i)
      if (!q[i].is_zero()) sub_scaled(s2, s1, q[i], static_cast<int>(i));
    r0 = r1; r1 = rem;
    s0 = s1; s1 = s2;
  }
  int dr1 = deg(r1);
  if (dr1 < 0)
    fail(ErrorKind::ExtensionRequired,
         "declared modulus is reducible; gcd with " + to_string() + " is nontrivial");
  Rational lead = r1[0];
  KElem r = zero(field_);
  for (size_t i = 0; i < s1.size() && i < r.c_.size(); ++i) r.c_[i] = s1[i] / lead;
  return r;
}

KElem KElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  KElem acc = one(field_);
  KElem base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool KElem::operator<(const KElem& o) const {
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] < o.c_[i]) return true;
    if (o.c_[i] < c_[i]) return false;
  }
  return false;
}

bool KElem::sqrt(KElem* root) const {
  if (is_zero()) { *root = *this; return true; }
  int d = field_->degree();
  if (is_rational()) {
    Rational r;
    if (c_[0].sqrt(&r)) { *root = of(field_, r); return true; }
    if (d == 1) return false;
  }
  if (d == 2) {
    // z = α + βy with y² = -p y - q; match components of z² = this
    const Rational p = field_->modulus_tail()[1];
    const Rational q = field_->modulus_tail()[0];
    const Rational d0 = c_[0], d1 = c_[1];
    // β = 0 branch handled above (rational case). β ≠ 0:
    // (p² - 4q) w² + (2 p d1 - 4 d0) w + d1² = 0 with w = β²
    Rational A = p * p - Rational(4) * q;
    Rational B = Rational(2) * p * d1 - Rational(4) * d0;
    Rational C = d1 * d1;
    std::vector<Rational> ws;
    if (A.is_zero()) {
      if (!B.is_zero()) ws.push_back((-C) / B);
    } else {
      Rational disc = B * B - Rational(4) * A * C, sq;
      if (disc.sqrt(&sq)) {
        ws.push_back((-B + sq) / (Rational(2) * A));
        ws.push_back((-B - sq) / (Rational(2) * A));
      }
    }
    for (const auto& w : ws) {
      Rational beta;
      if (w.sign() <= 0 || !w.sqrt(&beta)) continue;
      if (beta.is_zero()) continue;
      Rational alpha = (d1 + p * w) / (Rational(2) * beta);
      KElem z = from_coeffs(field_, {alpha, beta});
      if (z * z == *this) { *root = z; return true; }
    }
  }
  return false;
}

std::string KElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    Rational a = c_[i];
    if (first) {
      if (a.sign() < 0) { os << "-"; a = -a; }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    if (i == 0) os << a.to_string();
    else {
      if (a != Rational(1)) os << a.to_string() << "*";
      os << "y";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace rvkit
