#pragma once

#include <string>
#include <vector>

#include "rvkit/ball.hpp"

namespace rvkit {

// A one-variable definable set in canonical form: a laminar tree of balls
// with alternating membership flags. The in-flag of a node tells whether the
// points of the node's ball that avoid all child balls belong to the set;
// `far_in` covers points outside every listed ball. Canonicity: child balls
// are proper sub-balls, siblings are pairwise disjoint, flags strictly
// alternate along every branch, and ball keys are canonical. This gives each
// set a unique representation, so equality is structural.
class SwissCheese {
 public:
  struct Node {
    Ball ball;
    bool in = false;
    std::vector<Node> kids;
  };

  SwissCheese() = default;  // invalid until assigned; kept for containers
  explicit SwissCheese(FieldPtr f) : field_(std::move(f)) {}
  static SwissCheese empty_set(const FieldPtr& f);
  static SwissCheese whole(const FieldPtr& f);
  static SwissCheese of_ball(const Ball& b);
  static SwissCheese of_point(const Puiseux& p) { return of_ball(Ball::point(p)); }

  const FieldPtr& field() const { return field_; }
  bool is_empty() const { return !far_in_ && roots_.empty(); }
  bool is_whole() const { return far_in_ && roots_.empty(); }
  bool far_in() const { return far_in_; }
  const std::vector<Node>& tree() const { return roots_; }

  bool contains(const Puiseux& x) const;

  SwissCheese unite(const SwissCheese& o) const;
  SwissCheese intersect(const SwissCheese& o) const;
  SwissCheese subtract(const SwissCheese& o) const;
  SwissCheese complement() const;
  SwissCheese translate(const Puiseux& c) const;  // {x - c : x in set}

  bool operator==(const SwissCheese& o) const;
  bool operator!=(const SwissCheese& o) const { return !(*this == o); }

  // positive boolean components: in-nodes with their holes (= their kids)
  struct Component {
    Ball ball;
    std::vector<Ball> holes;
  };
  std::vector<Component> components() const;
  // flat views for the JSON schema
  std::vector<Ball> positive_balls() const;
  std::vector<Ball> hole_balls() const;

  // the single positive ball when the set is exactly one ball
  std::optional<Ball> as_single_ball() const;
  std::optional<Puiseux> as_single_point() const;
  bool is_finite_union_of_points() const;
  std::vector<Puiseux> point_list() const;  // when finite

  std::string to_string() const;

 private:
  friend SwissCheese combine(const SwissCheese&, const SwissCheese&, bool (*)(bool, bool));
  FieldPtr field_;
  bool far_in_ = false;
  std::vector<Node> roots_;
};

struct Simplex {
  GammaValue radius;
  GammaValue vcr;
  std::vector<SwissCheese::Component> pieces;
};

// smallest closed superballs of the positive components, deduplicated
std::vector<Ball> positive_closure(const SwissCheese& a);
// group components by (radius, valuative center)
std::vector<Simplex> simplex_grouping(const SwissCheese& a);

}  // namespace rvkit
