#pragma once

#include <optional>
#include <string>

#include "rvkit/puiseux.hpp"
#include "rvkit/rv_value.hpp"

namespace rvkit {

// Ultrametric ball. Membership: v(x - center) > radius (open) or >= radius
// (closed). A point is the closed ball of radius +inf; the whole line VF is
// the ball of radius -inf. Construction canonicalizes the center by dropping
// the terms that do not affect the set, so equal balls compare equal as data.
class Ball {
 public:
  Ball() = default;
  static Ball open(Puiseux center, GammaValue radius);
  static Ball closed(Puiseux center, GammaValue radius);
  static Ball point(Puiseux center);
  static Ball whole_line(const FieldPtr& f);
  static Ball rv_ball(const RvElem& t);  // rv^{-1}(t); rv^{-1}(∞) = {0}

  const Puiseux& center() const { return center_; }
  const GammaValue& radius() const { return radius_; }
  bool is_open() const { return open_; }
  bool is_closed() const { return !open_; }
  bool is_point() const { return radius_.is_plus_inf(); }
  bool is_whole_line() const { return radius_.is_minus_inf(); }
  const FieldPtr& field() const { return center_.field(); }

  bool contains_zero() const;
  // valuative center: v on the ball if 0 is outside, +inf otherwise
  GammaValue vcr() const;
  // the ball equals a fiber of rv
  bool is_rv_ball() const;
  std::optional<RvElem> rv_class() const;  // when contained in one rv-ball

  bool contains(const Puiseux& x) const;
  bool contains_ball(const Ball& o) const;
  bool disjoint_from(const Ball& o) const;

  // smallest closed superball (positive closure of a single ball)
  Ball closure() const;
  Ball translate(const Puiseux& c) const;  // the set {x - c : x in ball}
  Ball negate() const;                     // the set {-x}

  bool operator==(const Ball& o) const;
  bool operator!=(const Ball& o) const { return !(*this == o); }
  bool operator<(const Ball& o) const;  // canonical key order

  std::string to_string() const;

 private:
  Puiseux center_;
  GammaValue radius_ = GammaValue::minus_inf();
  bool open_ = false;
};

// Property (1) case analysis for `translate`
enum class TranslateCase { CenterInside, CenterAtLevel, TooDeep };

struct TranslateResult {
  Ball ball;
  GammaValue vcr;
  TranslateCase kase;
};

// a - c with the property (1) metadata
TranslateResult translate_ball(const Ball& a, const Puiseux& c);

// {x - y : x in a, y in b} for disjoint a, b; never contains 0
Ball diff_balls(const Ball& a, const Ball& b);

}  // namespace rvkit
