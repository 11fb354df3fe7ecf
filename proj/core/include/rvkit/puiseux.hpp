#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rvkit/kpoly.hpp"
#include "rvkit/number_field.hpp"
#include "rvkit/rational.hpp"

namespace rvkit {

class RvElem;

// An element of the valued field model: a finite Puiseux polynomial
// sum c_q * t^q over K, optionally truncated. precision = +inf means exact;
// a finite precision γ means the element is known modulo terms of exponent
// > γ, and all stored exponents are <= γ.
class Puiseux {
 public:
  Puiseux() = default;
  explicit Puiseux(FieldPtr f) : field_(std::move(f)), prec_(GammaValue::plus_inf()) {}

  static Puiseux zero(const FieldPtr& f) { return Puiseux(f); }
  static Puiseux one(const FieldPtr& f) { return constant(KElem::one(f)); }
  static Puiseux constant(const KElem& c);
  static Puiseux rational(const FieldPtr& f, const Rational& q) { return constant(KElem::of(f, q)); }
  static Puiseux monomial(const KElem& c, const Rational& exponent);
  static Puiseux t(const FieldPtr& f) { return monomial(KElem::one(f), Rational(1)); }
  static Puiseux from_terms(const FieldPtr& f, std::vector<std::pair<Rational, KElem>> terms,
                            GammaValue precision = GammaValue::plus_inf());

  const FieldPtr& field() const { return field_; }
  const std::vector<std::pair<Rational, KElem>>& terms() const { return terms_; }
  const GammaValue& precision() const { return prec_; }
  bool exact() const { return prec_.is_plus_inf(); }

  bool is_exact_zero() const { return terms_.empty() && exact(); }
  // true when the element provably differs from 0 (has a determined term)
  bool known_nonzero() const { return !terms_.empty(); }
  // exact element equal to zero, or truncated with no visible terms
  bool is_truncated_zero() const { return terms_.empty() && !exact(); }

  // valuation; +inf for the exact zero; InsufficientPrecision on a
  // truncated zero
  GammaValue val() const;
  // leading-term map; InsufficientPrecision on a truncated zero
  RvElem rv() const;
  KElem leading_coeff() const;  // coefficient at val()

  KElem coeff_at(const Rational& e) const;

  Puiseux operator-() const;
  Puiseux operator+(const Puiseux& o) const;
  Puiseux operator-(const Puiseux& o) const;
  Puiseux operator*(const Puiseux& o) const;
  Puiseux scale(const KElem& c) const;
  Puiseux shift(const Rational& e) const;  // multiply by t^e
  Puiseux pow(int n) const;

  // multiplicative inverse, exact if the series terminates, else truncated so
  // that mul(a, inv) agrees with 1 on all exponents <= target
  Puiseux inv(const Rational& target) const;

  // drop terms with exponent > γ (strict) or >= γ, lowering precision
  Puiseux truncate_above(const GammaValue& g, bool keep_equal) const;
  // forget the precision bound (treat the visible terms as exact)
  Puiseux as_exact() const;

  // data equality (terms and precision); exact elements compare as field
  // elements
  bool operator==(const Puiseux& o) const { return terms_ == o.terms_ && prec_ == o.prec_; }
  bool operator!=(const Puiseux& o) const { return !(*this == o); }
  bool operator<(const Puiseux& o) const;  // canonical ordering for keys

  std::string to_string() const;

 private:
  void normalize();
  FieldPtr field_;
  std::vector<std::pair<Rational, KElem>> terms_;  // ascending exponents, nonzero coeffs
  GammaValue prec_ = GammaValue::plus_inf();
};

// average of a nonempty finite list (char 0)
Puiseux average(const std::vector<Puiseux>& points);

}  // namespace rvkit
