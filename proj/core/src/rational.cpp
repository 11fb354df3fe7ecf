#include "rvkit/rational.hpp"

#include <cassert>

#include "rvkit/errors.hpp"

namespace rvkit {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::ExtensionRequired: return "ExtensionRequired";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NoRootInClass: return "NoRootInClass";
    case ErrorKind::NoRootInBall: return "NoRootInBall";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::PrecisionNotReached: return "PrecisionNotReached";
    case ErrorKind::RecursionBudgetExceeded: return "RecursionBudgetExceeded";
    case ErrorKind::UnsupportedTerm: return "UnsupportedTerm";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::FocusOutsideLocus: return "FocusOutsideLocus";
    case ErrorKind::DichotomyViolated: return "DichotomyViolated";
    case ErrorKind::NothingToLower: return "NothingToLower";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::GoldenMismatch: return "GoldenMismatch";
  }
  return "UnknownError";
}

Rational::Rational(long n, long d) {
  if (d == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) {
  if (q_.get_den() == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) fail(ErrorKind::DivisionByZero, "rational division by zero");
  return Rational(mpq_class(q_ / o.q_));
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  // accept "p" or "p/q" with optional leading sign
  size_t slash = s.find('/');
  auto is_int = [](const std::string& x) {
    if (x.empty()) return false;
    size_t i = (x[0] == '+' || x[0] == '-') ? 1 : 0;
    if (i >= x.size()) return false;
    for (; i < x.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rational(mpq_class(s));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!is_int(n) || !is_int(d)) return std::nullopt;
    mpq_class q(s);
    if (q.get_den() == 0) return std::nullopt;
    return Rational(q);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

bool Rational::sqrt(Rational* root) const {
  if (sign() < 0) return false;
  mpz_class n = num(), d = den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  *root = Rational(mpq_class(mpq_class(rn) / mpq_class(rd)));
  return true;
}

std::string Rational::to_string() const { return q_.get_str(); }

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

const Rational& GammaValue::value() const {
  assert(tag_ == Tag::Finite);
  return v_;
}

bool GammaValue::operator==(const GammaValue& o) const {
  if (tag_ != o.tag_) return false;
  return tag_ != Tag::Finite || v_ == o.v_;
}

bool GammaValue::operator<(const GammaValue& o) const {
  if (tag_ == o.tag_) return tag_ == Tag::Finite && v_ < o.v_;
  if (tag_ == Tag::MinusInf) return true;
  if (tag_ == Tag::PlusInf) return false;
  return o.tag_ == Tag::PlusInf;
}

GammaValue GammaValue::operator+(const GammaValue& o) const {
  if (tag_ == Tag::Finite && o.tag_ == Tag::Finite) return finite(v_ + o.v_);
  if (is_plus_inf()) { assert(!o.is_minus_inf()); return plus_inf(); }
  if (is_minus_inf()) { assert(!o.is_plus_inf()); return minus_inf(); }
  return o + *this;
}

std::string GammaValue::to_string() const {
  switch (tag_) {
    case Tag::MinusInf: return "-inf";
    case Tag::PlusInf: return "inf";
    default: return v_.to_string();
  }
}

std::optional<GammaValue> GammaValue::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return plus_inf();
  if (text == "-inf") return minus_inf();
  auto q = Rational::parse(text);
  if (!q) return std::nullopt;
  return finite(*q);
}

GammaValue min(const GammaValue& a, const GammaValue& b) { return a < b ? a : b; }
GammaValue max(const GammaValue& a, const GammaValue& b) { return a < b ? b : a; }

}  // namespace rvkit
