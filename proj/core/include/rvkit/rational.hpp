#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rvkit {

// Exact rational, always in lowest terms with positive denominator.
// Also serves as the value group Γ = ℚ of the model.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}
  Rational(long n, long d);
  explicit Rational(const mpq_class& q);

  static std::optional<Rational> parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  bool operator==(const Rational& o) const { return q_ == o.q_; }
  bool operator!=(const Rational& o) const { return q_ != o.q_; }
  bool operator<(const Rational& o) const { return q_ < o.q_; }
  bool operator<=(const Rational& o) const { return q_ <= o.q_; }
  bool operator>(const Rational& o) const { return q_ > o.q_; }
  bool operator>=(const Rational& o) const { return q_ >= o.q_; }

  // True when this is the square of a rational; the root is left in *root.
  bool sqrt(Rational* root) const;

  std::string to_string() const;

 private:
  mpq_class q_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Γ ∪ {±∞}. minusInfinity only ever appears as a ball radius; plusInfinity
// is both the valuation of 0 and the radius of a point.
class GammaValue {
 public:
  GammaValue() : tag_(Tag::Finite) {}
  static GammaValue finite(Rational v) { GammaValue g; g.tag_ = Tag::Finite; g.v_ = std::move(v); return g; }
  static GammaValue plus_inf() { GammaValue g; g.tag_ = Tag::PlusInf; return g; }
  static GammaValue minus_inf() { GammaValue g; g.tag_ = Tag::MinusInf; return g; }

  bool is_finite() const { return tag_ == Tag::Finite; }
  bool is_plus_inf() const { return tag_ == Tag::PlusInf; }
  bool is_minus_inf() const { return tag_ == Tag::MinusInf; }
  // Finite value; caller must check is_finite() first.
  const Rational& value() const;

  bool operator==(const GammaValue& o) const;
  bool operator!=(const GammaValue& o) const { return !(*this == o); }
  bool operator<(const GammaValue& o) const;
  bool operator<=(const GammaValue& o) const { return *this < o || *this == o; }
  bool operator>(const GammaValue& o) const { return o < *this; }
  bool operator>=(const GammaValue& o) const { return o <= *this; }

  // Absorbing addition; adding opposite infinities is a logic error.
  GammaValue operator+(const GammaValue& o) const;

  std::string to_string() const;  // "q", "inf", "-inf"
  static std::optional<GammaValue> parse(std::string_view text);

 private:
  enum class Tag { MinusInf, Finite, PlusInf };
  Tag tag_;
  Rational v_;
};

GammaValue min(const GammaValue& a, const GammaValue& b);
GammaValue max(const GammaValue& a, const GammaValue& b);

}  // namespace rvkit
