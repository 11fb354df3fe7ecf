#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvkit/number_field.hpp"
#include "rvkit/puiseux.hpp"
#include "rvkit/rational.hpp"

namespace rvkit {

// An element of the RV sort: ∞ = rv(0), or a pair (value in Γ, residue unit).
// K^× sits inside RV as the units of value 0.
class RvElem {
 public:
  RvElem() = default;
  static RvElem infinity(const FieldPtr& f);
  static RvElem unit(Rational gamma, KElem residue);  // residue != 0

  bool is_infinity() const { return inf_; }
  bool in_k_times() const { return !inf_ && gamma_.is_zero(); }
  GammaValue vrv() const { return inf_ ? GammaValue::plus_inf() : GammaValue::finite(gamma_); }
  const Rational& gamma() const { return gamma_; }
  const KElem& residue() const { return res_; }
  const FieldPtr& field() const { return field_; }

  RvElem operator*(const RvElem& o) const;
  RvElem pow(int n) const;  // negative powers invert; pow of ∞ stays ∞
  bool operator==(const RvElem& o) const;
  bool operator!=(const RvElem& o) const { return !(*this == o); }
  bool operator<(const RvElem& o) const;  // canonical ordering

  // the preorder of the RV sort: s <= t iff vrv(s) <= vrv(t), ∞ on top
  static bool leq(const RvElem& s, const RvElem& t) { return s.vrv() <= t.vrv(); }

  std::string to_string() const;  // "[q;c]" or "INF"

 private:
  FieldPtr field_;
  bool inf_ = true;
  Rational gamma_;
  KElem res_;
};

// RV ∪ {0}: the RV sort together with the distinguished zero of K, which the
// axioms keep separate from ∞.
class Rv0 {
 public:
  Rv0() = default;
  static Rv0 k_zero(const FieldPtr& f);
  static Rv0 of(RvElem t);

  bool is_k_zero() const { return kzero_; }
  bool is_infinity() const { return !kzero_ && t_.is_infinity(); }
  bool in_k() const { return kzero_ || t_.in_k_times(); }
  const RvElem& rv() const;  // K-zero has no RV part
  const FieldPtr& field() const { return field_; }
  // residue of a K element (0 for the zero)
  KElem k_value() const;

  bool operator==(const Rv0& o) const;
  bool operator!=(const Rv0& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FieldPtr field_;
  bool kzero_ = false;
  RvElem t_;
};

// Partial product on RV ∪ {0}: t·0 = 0 for t ∈ K, t·∞ = ∞ for all t, and
// the product of 0 with a non-K unit is undefined.
std::optional<Rv0> rv0_mul(const Rv0& a, const Rv0& b);

// K-term sum: defined iff every summand is of value 0 (a K^× unit) or is the
// zero of K; nullopt encodes Undefined.
std::optional<Rv0> k_term_sum(const std::vector<Rv0>& summands);

enum class SectionKind { None, RvSection, KSection };

// sn: RV ∪ {0} → VF. RvSection is the monomial section of the whole RV sort
// (the † symbol); KSection is the constant section of K (the ‡ symbol).
Puiseux section(SectionKind kind, const Rv0& t);
Puiseux section(SectionKind kind, const RvElem& t);

}  // namespace rvkit
