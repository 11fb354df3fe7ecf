#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rvkit/number_field.hpp"

namespace rvkit {

// Dense univariate polynomial over K. Coefficient 0 is the constant term;
// the representation is kept normalized (no zero leading coefficients).
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(FieldPtr f) : field_(std::move(f)) {}
  KPoly(FieldPtr f, std::vector<KElem> coeffs);

  static KPoly zero(const FieldPtr& f) { return KPoly(f); }
  static KPoly constant(const KElem& c);
  static KPoly monomial(const KElem& c, int degree);

  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<KElem>& coeffs() const { return c_; }
  KElem coeff(int i) const;
  const KElem& leading() const { return c_.back(); }

  KElem eval(const KElem& x) const;
  KPoly derivative() const;
  KPoly monic() const;

  KPoly operator+(const KPoly& o) const;
  KPoly operator-(const KPoly& o) const;
  KPoly operator*(const KPoly& o) const;
  bool operator==(const KPoly& o) const { return c_ == o.c_; }

  // Euclidean division; remainder degree < divisor degree.
  std::pair<KPoly, KPoly> divmod(const KPoly& d) const;
  static KPoly gcd(const KPoly& a, const KPoly& b);  // monic gcd

  std::string to_string() const;  // polynomial in y

 private:
  void normalize();
  FieldPtr field_;
  std::vector<KElem> c_;
};

struct KPolyRoots {
  std::vector<std::pair<KElem, int>> roots;  // root, multiplicity
  std::vector<KPoly> unresolved;             // factors with no root found in K
  KElem leading;
};

// All roots of p lying in its coefficient field, with multiplicities, plus
// the leftover factors. leading * prod (X - r)^m * prod unresolved == p.
KPolyRoots k_poly_roots(const KPoly& p);

}  // namespace rvkit
