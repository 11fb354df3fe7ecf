#pragma once

#include <optional>
#include <vector>

#include "rvkit/ball.hpp"
#include "rvkit/kpoly.hpp"
#include "rvkit/vf_poly.hpp"

namespace rvkit {

struct NewtonSegment {
  Rational slope;    // strictly increasing across segments
  int length;        // horizontal length; root valuation -slope, multiplicity length
  int left_index;
  int right_index;
  Rational left_val;
  Rational right_val;
  KPoly residual;    // normalized so the right-vertex coefficient is 1
};

struct NewtonPolygon {
  std::vector<std::pair<int, Rational>> vertices;  // lower hull of (i, v(b_i))
  std::vector<NewtonSegment> segments;
  int order_at_zero = 0;  // X-factor multiplicity (roots of valuation +inf)
};

NewtonPolygon newton_polygon(const VfPoly& F);

// multiset of root valuations from the slope-length correspondence
std::vector<std::pair<GammaValue, int>> root_valuations(const VfPoly& F);

struct UnresolvedFactor {
  Rational valuation;  // the segment's root valuation
  KPoly factor;
};

struct RootClasses {
  std::vector<std::pair<RvElem, int>> classes;
  std::vector<UnresolvedFactor> unresolved;
  int zero_root_multiplicity = 0;
};

// leading-term classes of the nonzero roots, from per-segment residuals
RootClasses root_rv_classes(const VfPoly& F);

struct RootExpansion {
  Puiseux value;     // exact when the expansion terminates, else truncated
  int multiplicity;
  bool exact;
};

// All roots of F expanded so that each is known modulo exponents > prec.
// ExtensionRequired when a residual factor has no root in K;
// PrecisionNotReached past the step cap.
std::vector<RootExpansion> puiseux_roots(const VfPoly& F, const Rational& prec,
                                         int step_cap = 64);

// Root lifting: checks the lemma hypotheses for (F, t) — on-level support of
// size >= 2, vanishing projected polynomial, positive value of the dropped
// coefficients — then returns b in the class t with rv(b) = t and
// v(F(b)) > precision. `keep` optionally fixes the support of the projected
// polynomial; by default the engine projects it.
Puiseux rv_lift_root(const VfPoly& F, const RvElem& t, const Rational& precision,
                     const std::optional<std::vector<int>>& keep = std::nullopt,
                     int step_cap = 64);

// common value of rv∘F on a ball containing no root of F and contained in an
// rv-ball (ball property 7)
RvElem rv_on_ball(const VfPoly& F, const Ball& b);

}  // namespace rvkit
