#include "rvkit/ball.hpp"

#include <cassert>

#include "rvkit/errors.hpp"

namespace rvkit {
namespace {

// canonical center: for an open ball terms of exponent > radius are
// irrelevant, for a closed ball so are terms of exponent >= radius
Puiseux canonical_center(const Puiseux& c, const GammaValue& radius, bool open) {
  if (!c.exact())
    fail(ErrorKind::InsufficientPrecision, "ball center must be exact");
  if (radius.is_minus_inf()) return Puiseux::zero(c.field());
  if (radius.is_plus_inf()) return c;
  return c.truncate_above(radius, open).as_exact();
}

}  // namespace

Ball Ball::open(Puiseux center, GammaValue radius) {
  if (radius.is_plus_inf())
    fail(ErrorKind::PreconditionViolated, "open ball of radius +inf is empty");
  Ball b;
  b.open_ = !radius.is_minus_inf();
  b.center_ = canonical_center(center, radius, b.open_);
  b.radius_ = radius;
  return b;
}

Ball Ball::closed(Puiseux center, GammaValue radius) {
  Ball b;
  b.open_ = false;
  b.center_ = canonical_center(center, radius, false);
  b.radius_ = radius;
  return b;
}

Ball Ball::point(Puiseux center) { return closed(std::move(center), GammaValue::plus_inf()); }

Ball Ball::whole_line(const FieldPtr& f) {
  return closed(Puiseux::zero(f), GammaValue::minus_inf());
}

Ball Ball::rv_ball(const RvElem& t) {
  if (t.is_infinity()) return point(Puiseux::zero(t.field()));
  return open(section(SectionKind::RvSection, t), GammaValue::finite(t.gamma()));
}

bool Ball::contains_zero() const { return contains(Puiseux::zero(field())); }

GammaValue Ball::vcr() const {
  if (contains_zero()) return GammaValue::plus_inf();
  return center_.val();
}

bool Ball::is_rv_ball() const {
  if (is_point()) return center_.is_exact_zero();  // rv^{-1}(∞)
  if (!open_ || !radius_.is_finite()) return false;
  if (contains_zero()) return false;
  return center_.val() == radius_;
}

std::optional<RvElem> Ball::rv_class() const {
  if (is_point() && center_.is_exact_zero()) return RvElem::infinity(field());
  if (contains_zero()) return std::nullopt;
  // contained in one rv-ball iff v is constant on the ball
  GammaValue v = center_.val();
  if (open_ ? radius_ >= v : radius_ > v) return center_.rv();
  return std::nullopt;
}

bool Ball::contains(const Puiseux& x) const {
  if (radius_.is_minus_inf()) return true;
  Puiseux d = x - center_;
  if (d.known_nonzero()) {
    GammaValue v = d.val();
    return open_ ? v > radius_ : v >= radius_;
  }
  if (d.is_exact_zero()) return !open_ || !radius_.is_plus_inf();
  // truncated zero: v > prec
  if (d.precision() >= radius_) return true;
  fail(ErrorKind::InsufficientPrecision, "ball membership undetermined at this precision");
}

bool Ball::contains_ball(const Ball& o) const {
  if (radius_.is_minus_inf()) return true;
  if (o.radius_.is_minus_inf()) return false;
  // radii: larger radius = smaller ball; same radius: closed contains open
  bool radius_ok;
  if (radius_ < o.radius_) radius_ok = true;
  else if (radius_ == o.radius_) radius_ok = !open_ || o.open_;
  else radius_ok = false;
  if (!radius_ok) return false;
  return contains(o.center_);
}

bool Ball::disjoint_from(const Ball& o) const {
  // balls intersect iff one contains the other
  return !contains_ball(o) && !o.contains_ball(*this);
}

Ball Ball::closure() const {
  if (!open_) return *this;
  return closed(center_, radius_);
}

Ball Ball::translate(const Puiseux& c) const {
  if (radius_.is_minus_inf()) return *this;
  Ball b;
  b.open_ = open_;
  b.radius_ = radius_;
  b.center_ = canonical_center(center_ - c, radius_, open_);
  return b;
}

Ball Ball::negate() const {
  if (radius_.is_minus_inf()) return *this;
  Ball b;
  b.open_ = open_;
  b.radius_ = radius_;
  b.center_ = canonical_center(-center_, radius_, open_);
  return b;
}

bool Ball::operator==(const Ball& o) const {
  return open_ == o.open_ && radius_ == o.radius_ && center_ == o.center_;
}

bool Ball::operator<(const Ball& o) const {
  if (radius_ != o.radius_) return radius_ < o.radius_;
  if (open_ != o.open_) return !open_;  // closed first
  return center_ < o.center_;
}

std::string Ball::to_string() const {
  if (is_whole_line()) return "VF";
  if (is_point()) return "{" + center_.to_string() + "}";
  return std::string(open_ ? "open(" : "closed(") + center_.to_string() + ", " +
         radius_.to_string() + ")";
}

TranslateResult translate_ball(const Ball& a, const Puiseux& c) {
  TranslateResult r;
  r.ball = a.translate(c);
  r.vcr = r.ball.vcr();
  if (a.contains(c)) r.kase = TranslateCase::CenterInside;
  else if (c.is_exact_zero() || GammaValue::finite(c.val().is_finite() ? c.val().value() : Rational(0)) <= a.radius() || !c.val().is_finite()) {
    // classified below; placeholder branch replaced immediately
    r.kase = TranslateCase::CenterAtLevel;
  }
  if (!a.contains(c)) {
    GammaValue vc = c.is_exact_zero() ? GammaValue::plus_inf() : c.val();
    r.kase = (vc > a.radius()) ? TranslateCase::TooDeep : TranslateCase::CenterAtLevel;
  }
  return r;
}

Ball diff_balls(const Ball& a, const Ball& b) {
  if (!a.disjoint_from(b))
    fail(ErrorKind::PreconditionViolated, "diff_balls requires disjoint balls");
  // a - b = a - (center of b) or (center of a) - b, whichever is larger
  Ball cand1 = a.translate(b.center());
  Ball cand2 = b.negate().translate(-a.center());
  Ball result = cand1.contains_ball(cand2) ? cand1 : cand2;
  assert(result.contains_ball(cand1) && result.contains_ball(cand2));
  if (result.contains_zero())
    fail(ErrorKind::PreconditionViolated, "diff_balls produced a set containing 0 (balls were not disjoint)");
  return result;
}

}  // namespace rvkit
