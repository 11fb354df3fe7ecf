#pragma once

#include <string>
#include <vector>

#include "rvkit/puiseux.hpp"

namespace rvkit {

// Univariate polynomial over the valued field (dense, normalized so the
// leading coefficient is nonzero).
class VfPoly {
 public:
  VfPoly() = default;
  explicit VfPoly(FieldPtr f) : field_(std::move(f)) {}
  VfPoly(FieldPtr f, std::vector<Puiseux> coeffs);

  static VfPoly constant(const Puiseux& c);
  static VfPoly variable(const FieldPtr& f);  // X
  static VfPoly monomial(const Puiseux& c, int degree);

  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Puiseux>& coeffs() const { return c_; }
  Puiseux coeff(int i) const;
  const Puiseux& leading() const { return c_.back(); }

  Puiseux eval(const Puiseux& x) const;
  VfPoly derivative() const;
  VfPoly shift(const Puiseux& c) const;  // F(X + c), exact Taylor shift
  VfPoly scale_arg(const Puiseux& c) const;  // F(c·X)

  VfPoly operator+(const VfPoly& o) const;
  VfPoly operator-(const VfPoly& o) const;
  VfPoly operator*(const VfPoly& o) const;
  VfPoly scale(const Puiseux& c) const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void normalize();
  FieldPtr field_;
  std::vector<Puiseux> c_;
};

}  // namespace rvkit
