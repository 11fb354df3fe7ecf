#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rvkit/rational.hpp"

namespace rvkit {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// The residue field K = ℚ[y]/(m(y)), m monic. Irreducibility is verified by
// the absence of rational roots, which is complete for degree ≤ 3 only; a
// misdeclared modulus of higher degree still yields well-defined ring
// arithmetic, and inversion reports the discovered factor.
class NumberField {
 public:
  // m(y) = y^d + tail[d-1] y^{d-1} + ... + tail[0], d = tail.size() >= 1.
  static FieldPtr create(std::vector<Rational> tail);
  static FieldPtr rationals();  // K = ℚ, modulus y

  int degree() const { return static_cast<int>(tail_.size()); }
  const std::vector<Rational>& modulus_tail() const { return tail_; }
  bool same(const NumberField& o) const { return tail_ == o.tail_; }
  bool is_rationals() const { return degree() == 1 && tail_[0].is_zero(); }
  std::string modulus_string() const;  // e.g. "y^2 - 2"

 private:
  explicit NumberField(std::vector<Rational> tail) : tail_(std::move(tail)) {}
  std::vector<Rational> tail_;
};

// An element of K in the power basis of the generator y.
class KElem {
 public:
  KElem() = default;  // invalid until assigned; kept for containers

  static KElem zero(const FieldPtr& f);
  static KElem one(const FieldPtr& f);
  static KElem of(const FieldPtr& f, Rational q);
  static KElem generator(const FieldPtr& f);
  // coeffs in the power basis, length <= degree (padded with zeros)
  static KElem from_coeffs(const FieldPtr& f, std::vector<Rational> coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;         // lives in the prime field
  Rational rational_part() const;   // coefficient of y^0

  KElem operator-() const;
  KElem operator+(const KElem& o) const;
  KElem operator-(const KElem& o) const;
  KElem operator*(const KElem& o) const;
  KElem inv() const;  // DivisionByZero on 0; ExtensionRequired if modulus splits
  KElem pow(long e) const;
  KElem scale(const Rational& q) const;

  bool operator==(const KElem& o) const { return c_ == o.c_; }
  bool operator!=(const KElem& o) const { return c_ != o.c_; }
  bool operator<(const KElem& o) const;  // lexicographic; canonical ordering only

  // True when this is a square in K; the root is left in *root.
  // Complete for field degree <= 2, best-effort above.
  bool sqrt(KElem* root) const;

  std::string to_string() const;  // polynomial in y, e.g. "1/2*y - 3"

 private:
  FieldPtr field_;
  std::vector<Rational> c_;  // length = degree
};

}  // namespace rvkit
