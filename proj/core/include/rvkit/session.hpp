#pragma once

#include <cstdint>
#include <string>

#include "rvkit/decompose.hpp"

namespace rvkit {

struct SessionConfig {
  FieldPtr field = NumberField::rationals();
  Rational default_precision = Rational(24);
  Budgets budgets;
  uint64_t seed = 1;
};

// "--field Q" or a monic polynomial in y, e.g. "y^2 - 2"
FieldPtr parse_field_spec(const std::string& spec);

// "newtonSteps=64,caseSplit=64,recursionDepth=32"
Budgets parse_budgets(const std::string& spec, Budgets base = {});

}  // namespace rvkit
