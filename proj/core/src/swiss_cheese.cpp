#include "rvkit/swiss_cheese.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "rvkit/errors.hpp"

namespace rvkit {

namespace {
using Node = SwissCheese::Node;

void collect_balls(const std::vector<Node>& ns, std::vector<Ball>* out) {
  for (const auto& n : ns) {
    out->push_back(n.ball);
    collect_balls(n.kids, out);
  }
}

// flag of the region of `b` (just inside b, outside any smaller family ball)
bool region_flag(const SwissCheese& s, const Ball& b) {
  bool flag = s.far_in();
  const std::vector<Node>* level = &s.tree();
  while (true) {
    const Node* next = nullptr;
    for (const auto& n : *level)
      if (n.ball.contains_ball(b)) { next = &n; break; }
    if (!next) return flag;
    flag = next->in;
    level = &next->kids;
  }
}

void insert_ball(std::vector<Node>* forest, const Ball& b) {
  for (auto& n : *forest) {
    if (n.ball == b) return;
    if (n.ball.contains_ball(b)) { insert_ball(&n.kids, b); return; }
  }
  // not inside any sibling: collect the ones it swallows
  Node fresh;
  fresh.ball = b;
  std::vector<Node> stay;
  for (auto& n : *forest) {
    if (b.contains_ball(n.ball)) fresh.kids.push_back(std::move(n));
    else stay.push_back(std::move(n));
  }
  stay.push_back(std::move(fresh));
  *forest = std::move(stay);
}

void assign_flags(std::vector<Node>* ns, const SwissCheese& a, const SwissCheese& b,
                  bool (*op)(bool, bool)) {
  for (auto& n : *ns) {
    n.in = op(region_flag(a, n.ball), region_flag(b, n.ball));
    assign_flags(&n.kids, a, b, op);
  }
}

std::vector<Node> prune(std::vector<Node> ns, bool parent_flag) {
  std::vector<Node> out;
  for (auto& n : ns) {
    std::vector<Node> kids = prune(std::move(n.kids), n.in);
    if (n.in == parent_flag) {
      for (auto& k : kids) out.push_back(std::move(k));
    } else {
      Node keep;
      keep.ball = n.ball;
      keep.in = n.in;
      keep.kids = std::move(kids);
      out.push_back(std::move(keep));
    }
  }
  std::sort(out.begin(), out.end(), [](const Node& x, const Node& y) { return x.ball < y.ball; });
  return out;
}

bool nodes_equal(const std::vector<Node>& a, const std::vector<Node>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].ball == b[i].ball) || a[i].in != b[i].in) return false;
    if (!nodes_equal(a[i].kids, b[i].kids)) return false;
  }
  return true;
}

void translate_nodes(std::vector<Node>* ns, const Puiseux& c) {
  for (auto& n : *ns) {
    n.ball = n.ball.translate(c);
    translate_nodes(&n.kids, c);
  }
}

void collect_components(const std::vector<Node>& ns, std::vector<SwissCheese::Component>* out) {
  for (const auto& n : ns) {
    if (n.in) {
      SwissCheese::Component c;
      c.ball = n.ball;
      for (const auto& k : n.kids) c.holes.push_back(k.ball);
      out->push_back(std::move(c));
    }
    collect_components(n.kids, out);
  }
}

}  // namespace

SwissCheese combine(const SwissCheese& a, const SwissCheese& b, bool (*op)(bool, bool)) {
  SwissCheese r(a.field() ? a.field() : b.field());
  std::vector<Ball> balls;
  collect_balls(a.tree(), &balls);
  collect_balls(b.tree(), &balls);
  std::sort(balls.begin(), balls.end());
  balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
  // bigger balls first so parents precede children
  std::vector<Node> forest;
  for (const auto& ball : balls) insert_ball(&forest, ball);
  r.far_in_ = op(a.far_in(), b.far_in());
  assign_flags(&forest, a, b, op);
  r.roots_ = prune(std::move(forest), r.far_in_);
  return r;
}

SwissCheese SwissCheese::empty_set(const FieldPtr& f) { return SwissCheese(f); }

SwissCheese SwissCheese::whole(const FieldPtr& f) {
  SwissCheese s(f);
  s.far_in_ = true;
  return s;
}

SwissCheese SwissCheese::of_ball(const Ball& b) {
  SwissCheese s(b.field());
  if (b.is_whole_line()) {
    s.far_in_ = true;
    return s;
  }
  Node n;
  n.ball = b;
  n.in = true;
  s.roots_.push_back(std::move(n));
  return s;
}

bool SwissCheese::contains(const Puiseux& x) const {
  bool flag = far_in_;
  const std::vector<Node>* level = &roots_;
  while (true) {
    const Node* next = nullptr;
    for (const auto& n : *level)
      if (n.ball.contains(x)) { next = &n; break; }
    if (!next) return flag;
    flag = next->in;
    level = &next->kids;
  }
}

SwissCheese SwissCheese::unite(const SwissCheese& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}

SwissCheese SwissCheese::intersect(const SwissCheese& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}

SwissCheese SwissCheese::subtract(const SwissCheese& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

SwissCheese SwissCheese::complement() const {
  return combine(*this, *this, [](bool x, bool) { return !x; });
}

SwissCheese SwissCheese::translate(const Puiseux& c) const {
  SwissCheese r = *this;
  translate_nodes(&r.roots_, c);
  return r;
}

bool SwissCheese::operator==(const SwissCheese& o) const {
  return far_in_ == o.far_in_ && nodes_equal(roots_, o.roots_);
}

std::vector<SwissCheese::Component> SwissCheese::components() const {
  std::vector<Component> out;
  if (far_in_) {
    Component vf;
    vf.ball = Ball::whole_line(field_);
    for (const auto& n : roots_) vf.holes.push_back(n.ball);
    out.push_back(std::move(vf));
  }
  collect_components(roots_, &out);
  return out;
}

std::vector<Ball> SwissCheese::positive_balls() const {
  std::vector<Ball> out;
  for (const auto& c : components()) out.push_back(c.ball);
  return out;
}

std::vector<Ball> SwissCheese::hole_balls() const {
  std::vector<Ball> out;
  for (const auto& c : components())
    for (const auto& h : c.holes) out.push_back(h);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Ball> SwissCheese::as_single_ball() const {
  if (is_whole()) return Ball::whole_line(field_);
  if (far_in_ || roots_.size() != 1) return std::nullopt;
  if (!roots_[0].in || !roots_[0].kids.empty()) return std::nullopt;
  return roots_[0].ball;
}

std::optional<Puiseux> SwissCheese::as_single_point() const {
  auto b = as_single_ball();
  if (b && b->is_point()) return b->center();
  return std::nullopt;
}

bool SwissCheese::is_finite_union_of_points() const {
  if (far_in_) return false;
  for (const auto& n : roots_)
    if (!n.in || !n.ball.is_point() || !n.kids.empty()) return false;
  return true;
}

std::vector<Puiseux> SwissCheese::point_list() const {
  assert(is_finite_union_of_points());
  std::vector<Puiseux> out;
  for (const auto& n : roots_) out.push_back(n.ball.center());
  return out;
}

std::string SwissCheese::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : components()) {
    if (!first) os << " u ";
    first = false;
    os << c.ball.to_string();
    for (const auto& h : c.holes) os << " \\ " << h.to_string();
    if (c.holes.size() > 1) os << " (disjoint holes)";
  }
  if (first) os << "{}";
  return os.str();
}

std::vector<Ball> positive_closure(const SwissCheese& a) {
  std::vector<Ball> out;
  for (const auto& c : a.components()) out.push_back(c.ball.closure());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Simplex> simplex_grouping(const SwissCheese& a) {
  std::map<std::pair<GammaValue, GammaValue>, Simplex,
           bool (*)(const std::pair<GammaValue, GammaValue>&, const std::pair<GammaValue, GammaValue>&)>
      groups([](const std::pair<GammaValue, GammaValue>& x, const std::pair<GammaValue, GammaValue>& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
  for (const auto& c : a.components()) {
    auto key = std::make_pair(c.ball.radius(), c.ball.vcr());
    auto it = groups.find(key);
    if (it == groups.end()) {
      Simplex s;
      s.radius = key.first;
      s.vcr = key.second;
      s.pieces.push_back(c);
      groups.emplace(key, std::move(s));
    } else {
      it->second.pieces.push_back(c);
    }
  }
  std::vector<Simplex> out;
  for (auto& [k, v] : groups) out.push_back(std::move(v));
  return out;
}

}  // namespace rvkit
