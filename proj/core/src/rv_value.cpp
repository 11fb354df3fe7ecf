#include "rvkit/rv_value.hpp"

#include <cassert>

#include "rvkit/errors.hpp"

namespace rvkit {

RvElem RvElem::infinity(const FieldPtr& f) {
  RvElem t;
  t.field_ = f;
  t.inf_ = true;
  return t;
}

RvElem RvElem::unit(Rational gamma, KElem residue) {
  assert(!residue.is_zero());
  RvElem t;
  t.field_ = residue.field();
  t.inf_ = false;
  t.gamma_ = std::move(gamma);
  t.res_ = std::move(residue);
  return t;
}

RvElem RvElem::operator*(const RvElem& o) const {
  if (inf_ || o.inf_) return infinity(field_ ? field_ : o.field_);
  return unit(gamma_ + o.gamma_, res_ * o.res_);
}

RvElem RvElem::pow(int n) const {
  if (inf_) return *this;
  if (n == 0) return unit(Rational(0), KElem::one(field_));
  return unit(gamma_ * Rational(n), res_.pow(n));
}

bool RvElem::operator==(const RvElem& o) const {
  if (inf_ != o.inf_) return false;
  return inf_ || (gamma_ == o.gamma_ && res_ == o.res_);
}

bool RvElem::operator<(const RvElem& o) const {
  if (inf_ != o.inf_) return !inf_;  // units before ∞
  if (inf_) return false;
  if (gamma_ != o.gamma_) return gamma_ < o.gamma_;
  return res_ < o.res_;
}

std::string RvElem::to_string() const {
  if (inf_) return "INF";
  return "[" + gamma_.to_string() + ";" + res_.to_string() + "]";
}

Rv0 Rv0::k_zero(const FieldPtr& f) {
  Rv0 z;
  z.field_ = f;
  z.kzero_ = true;
  return z;
}

Rv0 Rv0::of(RvElem t) {
  Rv0 z;
  z.field_ = t.field();
  z.kzero_ = false;
  z.t_ = std::move(t);
  return z;
}

const RvElem& Rv0::rv() const {
  assert(!kzero_);
  return t_;
}

KElem Rv0::k_value() const {
  assert(in_k());
  return kzero_ ? KElem::zero(field_) : t_.residue();
}

bool Rv0::operator==(const Rv0& o) const {
  if (kzero_ != o.kzero_) return false;
  return kzero_ || t_ == o.t_;
}

std::string Rv0::to_string() const { return kzero_ ? "0K" : t_.to_string(); }

std::optional<Rv0> rv0_mul(const Rv0& a, const Rv0& b) {
  // t × ∞ = ∞ for every t in RV ∪ {0}
  if (a.is_infinity() || b.is_infinity())
    return Rv0::of(RvElem::infinity(a.field() ? a.field() : b.field()));
  // t × 0 = 0 only for t ∈ K
  if (a.is_k_zero() || b.is_k_zero()) {
    const Rv0& other = a.is_k_zero() ? b : a;
    if (!other.in_k()) return std::nullopt;
    return Rv0::k_zero(a.field() ? a.field() : b.field());
  }
  return Rv0::of(a.rv() * b.rv());
}

std::optional<Rv0> k_term_sum(const std::vector<Rv0>& summands) {
  if (summands.empty()) return std::nullopt;
  const FieldPtr& f = summands.front().field();
  KElem acc = KElem::zero(f);
  for (const auto& s : summands) {
    if (s.is_k_zero()) continue;
    if (s.is_infinity() || !s.rv().in_k_times()) return std::nullopt;
    acc = acc + s.rv().residue();
  }
  if (acc.is_zero()) return Rv0::k_zero(f);
  return Rv0::of(RvElem::unit(Rational(0), acc));
}

Puiseux section(SectionKind kind, const RvElem& t) {
  assert(kind != SectionKind::None);
  if (t.is_infinity()) return Puiseux::zero(t.field());
  if (kind == SectionKind::RvSection) return Puiseux::monomial(t.residue(), t.gamma());
  return t.in_k_times() ? Puiseux::constant(t.residue()) : Puiseux::zero(t.field());
}

Puiseux section(SectionKind kind, const Rv0& t) {
  if (t.is_k_zero()) return Puiseux::zero(t.field());
  return section(kind, t.rv());
}

}  // namespace rvkit
