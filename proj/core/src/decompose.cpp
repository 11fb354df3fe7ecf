#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

#include "rvkit/decompose.hpp"
#include "rvkit/errors.hpp"

namespace rvkit {

namespace detail {
std::vector<VfPoly> literal_polys(const Literal& lit, const std::string& var, const FieldPtr& f);
}  // namespace detail

DefinableSet1 decompose1(const FPtr& formula, const std::string& var, const FieldPtr& f,
                         const Budgets& budgets) {
  DefinableSet1 out{formula, var, SwissCheese::empty_set(f), {}, {}};
  VarInventory inv = variables(formula);
  for (const auto& v : inv.vf_vars)
    if (v != var) fail(ErrorKind::TypeError, "unbound VF variable " + v);
  if (!inv.rv_vars.empty())
    fail(ErrorKind::TypeError, "unbound RV variable " + *inv.rv_vars.begin());
  FPtr dnf = to_dnf(formula);
  std::vector<std::pair<SwissCheese, std::string>> literal_sets;
  for (const auto& clause : dnf_clauses(dnf)) {
    SwissCheese conj = SwissCheese::whole(f);
    for (const Literal& lit : clause) {
      SwissCheese sol = solve_literal1(lit, var, f, budgets);
      literal_sets.push_back({sol, lit.to_string()});
      for (const auto& p : detail::literal_polys(lit, var, f)) {
        bool seen = false;
        for (const auto& q : out.provenance_polys)
          if (q.to_string() == p.to_string()) { seen = true; break; }
        if (!seen) out.provenance_polys.push_back(p);
      }
      conj = conj.intersect(sol);
    }
    out.cheese = out.cheese.unite(conj);
  }
  // per-ball provenance: which literal solutions contain each component ball
  for (const auto& comp : out.cheese.components()) {
    std::vector<std::string> lits;
    for (const auto& [sol, name] : literal_sets) {
      // a representative of the component: its (possibly punctured) center
      // region is inside the solution iff the ball's canonical center is,
      // unless that center sits in a hole
      Puiseux rep = comp.ball.center();
      bool in_hole = false;
      for (const auto& h : comp.holes)
        if (h.contains(rep)) { in_hole = true; break; }
      if (in_hole) continue;
      if (sol.contains(rep)) lits.push_back(name);
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    out.ball_provenance[comp.ball.to_string()] = lits;
  }
  return out;
}

bool decide_exists(const FPtr& formula, const std::string& var, const FieldPtr& f,
                   const Budgets& budgets) {
  return !decompose1(formula, var, f, budgets).cheese.is_empty();
}

std::vector<std::pair<Ball, Puiseux>> centers_closed(const DefinableSet1& set,
                                                     const Budgets& budgets) {
  std::vector<std::pair<Ball, Puiseux>> out;
  std::vector<SwissCheese::Component> comps = set.cheese.components();
  for (const auto& c : comps) {
    if (!c.holes.empty())
      fail(ErrorKind::PreconditionViolated, "centers need a union of closed balls, got holes");
    if (c.ball.is_open() && !c.ball.is_whole_line())
      fail(ErrorKind::PreconditionViolated, "centers need closed balls");
  }
  // all roots of the provenance polynomials, expanded deep enough to decide
  // every ball membership (point balls may force extra precision)
  Rational deep(8);
  for (const auto& c : comps)
    if (c.ball.radius().is_finite()) deep = rvkit::max(deep, c.ball.radius().value() + Rational(1));
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<Puiseux> roots;
    for (const auto& P : set.provenance_polys) {
      if (P.degree() < 1) continue;
      for (const auto& r : puiseux_roots(P, deep, budgets.newton_steps))
        roots.push_back(r.value);
    }
    try {
      out.clear();
      for (const auto& c : comps) {
        std::vector<Puiseux> inside;
        for (const auto& r : roots)
          if (c.ball.contains(r)) inside.push_back(r.as_exact());
        if (inside.empty())
          fail(ErrorKind::NoRootInBall,
               "ball " + c.ball.to_string() + " contains no provenance root");
        Puiseux avg = average(inside);
        if (!c.ball.contains(avg))
          fail(ErrorKind::NoRootInBall, "root average escaped its ball (bug)");
        out.push_back({c.ball, avg});
      }
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientPrecision) throw;
      deep = deep * Rational(2) + Rational(8);
    }
  }
  fail(ErrorKind::PrecisionNotReached, "root expansions never decided the ball memberships");
}

Puiseux rv_ball_center(const RvElem& t, const DefinableSet1& a, const Budgets& budgets) {
  Ball rvball = Ball::rv_ball(t);
  if (a.cheese.is_empty())
    fail(ErrorKind::PreconditionViolated, "empty subset has no definable center");
  // proper subset of the rv-ball
  SwissCheese ballset = SwissCheese::of_ball(rvball);
  if (a.cheese == ballset)
    fail(ErrorKind::PreconditionViolated, "subset equals the rv-ball; not proper");
  if (!a.cheese.subtract(ballset).is_empty())
    fail(ErrorKind::PreconditionViolated, "subset is not contained in the rv-ball");
  // positive closures of the components contained in the rv-ball
  std::vector<Ball> closures;
  for (const auto& b : positive_closure(a.cheese))
    if (rvball.contains_ball(b) && !(b == rvball)) closures.push_back(b);
  if (closures.empty())
    fail(ErrorKind::PreconditionViolated, "no proper closed subball to center");
  DefinableSet1 closed_set = a;
  closed_set.cheese = SwissCheese::empty_set(a.cheese.field());
  for (const auto& b : closures)
    closed_set.cheese = closed_set.cheese.unite(SwissCheese::of_ball(b));
  std::vector<Puiseux> centers;
  for (auto& [ball, center] : centers_closed(closed_set, budgets)) centers.push_back(center);
  return average(centers);
}

Puiseux approximate_outside(const Ball& gb, const std::vector<VfPoly>& polys,
                            const Budgets& budgets) {
  const FieldPtr& f = gb.field();
  auto cls = gb.rv_class();
  if (!cls || cls->is_infinity())
    fail(ErrorKind::PreconditionViolated, "ball is not inside an rv-ball");
  if (!gb.radius().is_finite())
    fail(ErrorKind::PreconditionViolated, "ball must be a proper ball");
  if (Ball::rv_ball(*cls) == gb)
    fail(ErrorKind::PreconditionViolated, "ball equals the rv-ball; nothing lies outside");
  Rational rad = gb.radius().value();
  Rational vcr = gb.center().val().value();
  // roots and their distances to the ball
  std::vector<Puiseux> roots;
  for (const auto& P : polys) {
    if (P.degree() < 1) continue;
    for (const auto& r : puiseux_roots(P, rad + Rational(1), budgets.newton_steps)) {
      if (gb.contains(r.value))
        fail(ErrorKind::PreconditionViolated,
             "ball contains the root " + r.value.to_string());
      roots.push_back(r.value);
    }
  }
  // delta: the level of the step away from the ball; it must stay inside the
  // rv-ball, outside gb, and beyond every root contact
  Rational max_contact = vcr;
  std::vector<KElem> bad_res;
  for (const auto& r : roots) {
    Puiseux d = r.as_exact() - gb.center();
    if (d.is_exact_zero() || !d.known_nonzero()) continue;
    Rational c = d.val().value();
    if (c > max_contact) max_contact = c;
  }
  Rational delta;
  if (gb.is_closed()) {
    // roots outside a closed ball keep contact < rad, and vcr < rad
    delta = (rvkit::max(max_contact, vcr) + rad) / Rational(2);
  } else {
    delta = rad;  // open ball: step exactly at the radius level
  }
  // avoid the residues of root directions at the chosen level
  for (const auto& r : roots) {
    Puiseux d = r.as_exact() - gb.center();
    if (d.is_exact_zero() || !d.known_nonzero()) continue;
    if (d.val().value() == delta) bad_res.push_back(d.leading_coeff());
  }
  for (long k = 1;; ++k) {
    KElem q = KElem::of(f, Rational(k));
    bool bad = false;
    for (const auto& b : bad_res)
      if (b == q) { bad = true; break; }
    if (bad) continue;
    Puiseux d = gb.center() + Puiseux::monomial(q, delta);
    if (gb.contains(d)) continue;  // paranoid; cannot happen
    // post-hoc verification per the lemma
    bool ok = true;
    for (const auto& P : polys) {
      if (P.degree() < 1) continue;
      if (gb.is_closed()) {
        if (!(P.eval(d).rv() == rv_on_ball(P, gb))) { ok = false; break; }
      } else {
        if (P.eval(d).val() != P.eval(gb.center()).val()) { ok = false; break; }
      }
    }
    if (ok) return d;
    if (k > 64)
      fail(ErrorKind::PreconditionViolated, "no admissible step direction found");
  }
}

namespace {

void rv_code_rec(const std::vector<Puiseux>& elems, std::vector<std::vector<RvElem>>* codes,
                 std::vector<size_t> idx, RvCodeNode* node, const FieldPtr& f) {
  node->leaf = idx.size() <= 1;
  if (node->leaf) return;
  std::vector<Puiseux> pts;
  for (size_t i : idx) pts.push_back(elems[i]);
  Puiseux c = average(pts);
  node->center = c;
  // split by rv of the centered elements; distinct by the centered-set lemma
  std::map<std::string, std::pair<RvElem, std::vector<size_t>>> classes;
  for (size_t i : idx) {
    Puiseux d = elems[i] - c;
    RvElem r = d.is_exact_zero() ? RvElem::infinity(f) : d.rv();
    auto key = r.to_string();
    auto it = classes.find(key);
    if (it == classes.end()) classes.insert({key, {r, {i}}});
    else it->second.second.push_back(i);
  }
  assert(classes.size() >= 2);
  for (auto& [key, cls] : classes) {
    for (size_t i : cls.second) (*codes)[i].push_back(cls.first);
    RvCodeNode kid;
    rv_code_rec(elems, codes, cls.second, &kid, f);
    node->classes.push_back({cls.first, std::move(kid)});
  }
  // pad to equal depth with ∞ so the final tuples are rectangular
  size_t deepest = 0;
  for (auto& [key, cls] : classes)
    for (size_t i : cls.second) deepest = std::max(deepest, (*codes)[i].size());
  for (size_t i : idx)
    while ((*codes)[i].size() < deepest) (*codes)[i].push_back(RvElem::infinity(f));
}

}  // namespace

RvCode finite_set_rv_code(const std::vector<std::vector<Puiseux>>& tuples) {
  RvCode out;
  if (tuples.empty()) return out;
  size_t n = tuples[0].size();
  const FieldPtr& f = tuples[0][0].field();
  for (const auto& t : tuples) {
    if (t.size() != n) fail(ErrorKind::TypeError, "tuples of unequal arity");
    for (const auto& x : t)
      if (!x.exact()) fail(ErrorKind::InsufficientPrecision, "coding needs exact elements");
  }
  out.codes.assign(tuples.size(), {});
  if (n == 1) {
    std::vector<Puiseux> elems;
    for (const auto& t : tuples) elems.push_back(t[0]);
    // distinctness
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = i + 1; j < elems.size(); ++j)
        if ((elems[i] - elems[j]).is_exact_zero())
          fail(ErrorKind::PreconditionViolated, "elements must be distinct");
    std::vector<size_t> idx(elems.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rv_code_rec(elems, &out.codes, idx, &out.tree, f);
    size_t w = 0;
    for (const auto& c : out.codes) w = std::max(w, c.size());
    for (auto& c : out.codes)
      while (c.size() < w) c.push_back(RvElem::infinity(f));
    out.width = static_cast<int>(w);
    return out;
  }
  // n > 1: code the last coordinate, then the fibers, and concatenate
  std::map<std::string, std::vector<size_t>> fibers;
  std::vector<std::vector<Puiseux>> lastcol;
  std::map<std::string, size_t> key_to_col;
  for (size_t i = 0; i < tuples.size(); ++i) {
    std::string key = tuples[i][n - 1].to_string();
    fibers[key].push_back(i);
    if (!key_to_col.count(key)) {
      key_to_col[key] = lastcol.size();
      lastcol.push_back({tuples[i][n - 1]});
    }
  }
  RvCode proj = finite_set_rv_code(lastcol);
  size_t fiber_w = 0;
  std::map<std::string, RvCode> fiber_codes;
  for (const auto& [key, idxs] : fibers) {
    std::vector<std::vector<Puiseux>> sub;
    for (size_t i : idxs) {
      std::vector<Puiseux> pref(tuples[i].begin(), tuples[i].end() - 1);
      sub.push_back(pref);
    }
    RvCode fc = finite_set_rv_code(sub);
    fiber_w = std::max(fiber_w, static_cast<size_t>(fc.width));
    fiber_codes[key] = std::move(fc);
  }
  const FieldPtr& ff = tuples[0][0].field();
  for (const auto& [key, idxs] : fibers) {
    const RvCode& fc = fiber_codes[key];
    for (size_t j = 0; j < idxs.size(); ++j) {
      std::vector<RvElem> code = fc.codes[j];
      while (code.size() < fiber_w) code.push_back(RvElem::infinity(ff));
      const auto& pcode = proj.codes[key_to_col[key]];
      code.insert(code.end(), pcode.begin(), pcode.end());
      out.codes[idxs[j]] = std::move(code);
    }
  }
  size_t w = 0;
  for (const auto& c : out.codes) w = std::max(w, c.size());
  for (auto& c : out.codes)
    while (c.size() < w) c.push_back(RvElem::infinity(ff));
  out.width = static_cast<int>(w);
  return out;
}

std::vector<Puiseux> probe_points(const SwissCheese& sc, const FieldPtr& f, size_t at_least,
                                  uint64_t seed) {
  std::vector<Puiseux> out;
  std::mt19937_64 rng(seed);
  auto rand_rat = [&](long lo, long hi) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<long> den(1, 4);
    return Rational(num(rng), den(rng));
  };
  auto rand_res = [&]() {
    std::uniform_int_distribution<long> num(1, 9);
    return KElem::of(f, Rational(num(rng)));
  };
  auto push_probe = [&](const Puiseux& x) { out.push_back(x.as_exact()); };
  auto probe_ball = [&](const Ball& b) {
    if (b.is_whole_line()) {
      push_probe(Puiseux::zero(f));
      push_probe(Puiseux::monomial(KElem::one(f), Rational(-3)));
      return;
    }
    const Puiseux& c = b.center();
    push_probe(c);
    if (b.radius().is_finite()) {
      Rational r = b.radius().value();
      // on the radius (member of closed, outside open)
      push_probe(c + Puiseux::monomial(rand_res(), r));
      // just inside at r + 1/7
      push_probe(c + Puiseux::monomial(rand_res(), r + Rational(1, 7)));
      // just outside at r - 1/7
      push_probe(c + Puiseux::monomial(rand_res(), r - Rational(1, 7)));
      // deeper inside
      push_probe(c + Puiseux::monomial(rand_res(), r + Rational(2)));
    }
  };
  for (const auto& comp : sc.components()) {
    probe_ball(comp.ball);
    for (const auto& h : comp.holes) probe_ball(h);
  }
  // far and generic points
  while (out.size() < at_least) {
    Puiseux x = Puiseux::monomial(rand_res(), rand_rat(-4, 6));
    std::uniform_int_distribution<int> extra(0, 2);
    int k = extra(rng);
    Rational e = x.val().value();
    for (int i = 0; i < k; ++i) {
      e = e + rand_rat(1, 3);
      x = x + Puiseux::monomial(rand_res(), e);
    }
    std::uniform_int_distribution<int> addc(0, 3);
    if (addc(rng) == 0) x = x + Puiseux::rational(f, rand_rat(-3, 3));
    push_probe(x);
  }
  return out;
}

}  // namespace rvkit
