#include "rvkit/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

#include "rvkit/corpus.hpp"
#include "rvkit/errors.hpp"
#include "rvkit/sections.hpp"

namespace rvkit {
namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

// random Puiseux polynomial with exponent denominators <= 4 and integer
// heights <= 8
Puiseux random_root(std::mt19937_64& rng, const FieldPtr& f, bool allow_zero = true) {
  std::uniform_int_distribution<int> nterms(0, 2);
  std::uniform_int_distribution<long> num(-8, 8);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<long> coeff(-6, 6);
  int k = nterms(rng);
  if (k == 0 && allow_zero) {
    std::uniform_int_distribution<int> z(0, 3);
    if (z(rng) == 0) return Puiseux::zero(f);
  }
  Rational e(num(rng), den(rng));
  long c0 = coeff(rng);
  if (c0 == 0) c0 = 1;
  Puiseux x = Puiseux::monomial(KElem::of(f, Rational(c0)), e);
  for (int i = 0; i < k; ++i) {
    e = e + Rational(std::abs(num(rng)) + 1, den(rng));
    long c = coeff(rng);
    if (c == 0) continue;
    x = x + Puiseux::monomial(KElem::of(f, Rational(c)), e);
  }
  return x;
}

VfPoly product_of_linear(const std::vector<Puiseux>& roots, const FieldPtr& f) {
  VfPoly F = VfPoly::constant(Puiseux::one(f));
  for (const auto& r : roots) {
    VfPoly lin(f, {-r, Puiseux::one(f)});
    F = F * lin;
  }
  return F;
}

std::multiset<std::string> valuation_multiset(const std::vector<std::pair<GammaValue, int>>& vs) {
  std::multiset<std::string> out;
  for (const auto& [g, m] : vs)
    for (int i = 0; i < m; ++i) out.insert(g.to_string());
  return out;
}

}  // namespace

SuiteResult suite_newton(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "newton";
  std::mt19937_64 rng(cfg.seed ^ 0xabcdef12ull);
  std::uniform_int_distribution<int> nroots(2, 5);
  Json failures = Json::array();
  for (int i = 0; i < 100; ++i) {
    int n = nroots(rng);
    std::vector<Puiseux> roots;
    for (int j = 0; j < n; ++j) roots.push_back(random_root(rng, cfg.field));
    VfPoly F = product_of_linear(roots, cfg.field);
    std::multiset<std::string> expected;
    for (const auto& r : roots)
      expected.insert(r.is_exact_zero() ? "inf" : r.val().to_string());
    ++res.total;
    auto got = valuation_multiset(root_valuations(F));
    if (got != expected) {
      ++res.failed;
      Json f;
      f["poly"] = F.to_string();
      failures.push_back(f);
    }
  }
  res.pass = res.failed == 0;
  res.details["failures"] = failures;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_lift(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "lift";
  std::mt19937_64 rng(cfg.seed ^ 0x5e1ec7ull);
  std::uniform_int_distribution<int> nroots(2, 4);
  Json failures = Json::array();
  int made = 0;
  while (made < 50) {
    int n = nroots(rng);
    std::vector<Puiseux> roots;
    for (int j = 0; j < n; ++j) roots.push_back(random_root(rng, cfg.field, false));
    VfPoly F = product_of_linear(roots, cfg.field);
    // pick the class of an actual root: hypotheses hold by construction
    const Puiseux& r0 = roots[made % n];
    if (r0.is_exact_zero()) continue;
    RvElem t = r0.rv();
    ++made;
    ++res.total;
    try {
      Puiseux b = rv_lift_root(F, t, Rational(20), std::nullopt, cfg.budgets.newton_steps);
      bool ok = (b.rv() == t);
      Puiseux fb = F.eval(b.as_exact());
      ok = ok && (fb.is_exact_zero() || fb.val() > GammaValue::finite(Rational(20)));
      if (!ok) {
        ++res.failed;
        failures.push_back(Json{{"poly", F.to_string()}, {"t", t.to_string()}});
      }
    } catch (const Error& e) {
      ++res.failed;
      failures.push_back(Json{{"poly", F.to_string()}, {"t", t.to_string()}, {"error", e.what()}});
    }
  }
  // hypothesis violations are rejected with the named clause
  {
    FieldPtr f = cfg.field;
    VfPoly F = product_of_linear({Puiseux::t(f), -Puiseux::t(f)}, f);  // X^2 - t^2
    ++res.total;
    try {
      rv_lift_root(F, RvElem::unit(Rational(1), KElem::of(f, Rational(5))), Rational(10));
      ++res.failed;
      failures.push_back(Json{{"missing rejection", "residue 5 is not a residual root"}});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolated ||
          e.detail().find("vanish") == std::string::npos) {
        ++res.failed;
        failures.push_back(Json{{"wrong rejection", e.what()}});
      }
    }
    ++res.total;
    try {
      // a class level between the segments: the projected polynomial is a
      // monomial there
      rv_lift_root(F, RvElem::unit(Rational(3), KElem::one(f)), Rational(10));
      ++res.failed;
      failures.push_back(Json{{"missing rejection", "monomial projected polynomial"}});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolated ||
          e.detail().find("monomial") == std::string::npos) {
        ++res.failed;
        failures.push_back(Json{{"wrong rejection", e.what()}});
      }
    }
  }
  res.pass = res.failed == 0;
  res.details["failures"] = failures;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_cmin(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "cmin";
  Json entries = Json::array();
  for (const auto& e : builtin_corpus()) {
    FieldPtr f = parse_field_spec(e.field);
    FPtr phi = parse_formula(f, e.formula);
    ++res.total;
    Json rec;
    rec["name"] = e.name;
    try {
      DefinableSet1 d = decompose1(phi, "X", f, cfg.budgets);
      // normalization idempotence
      bool idem = (d.cheese == d.cheese.unite(d.cheese)) &&
                  (d.cheese == d.cheese.complement().complement());
      int agree = 0, total = 0;
      uint64_t seed = fnv_hash(e.formula) ^ cfg.seed;
      for (const auto& x : probe_points(d.cheese, f, 200, seed)) {
        Assignment a;
        a.vf["X"] = x;
        bool by_eval = eval_qf(phi, a, SectionKind::None);
        bool by_cheese = d.cheese.contains(x);
        ++total;
        if (by_eval == by_cheese) ++agree;
      }
      rec["probes"] = total;
      rec["agreement"] = agree;
      rec["idempotent"] = idem;
      if (agree != total || !idem || total < 200) {
        ++res.failed;
        rec["status"] = "FAIL";
      } else {
        rec["status"] = "ok";
      }
    } catch (const Error& err) {
      ++res.failed;
      rec["status"] = "FAIL";
      rec["error"] = err.what();
    }
    entries.push_back(rec);
  }
  res.pass = res.failed == 0;
  res.details["entries"] = entries;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_pullback(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "pullback";
  Json entries = Json::array();
  for (const auto& e : builtin_corpus()) {
    FieldPtr f = parse_field_spec(e.field);
    FPtr phi = parse_formula(f, e.formula);
    ++res.total;
    Json rec;
    rec["name"] = e.name;
    try {
      DefinableSet1 d = decompose1(phi, "X", f, cfg.budgets);
      if (d.cheese.is_empty()) {
        rec["status"] = "ok (empty)";
        entries.push_back(rec);
        continue;
      }
      FiberedSet fs = FiberedSet::of_set(d.cheese);
      fs.provenance = d.provenance_polys;
      PullbackResult pr = to_rv_pullback(fs, cfg.budgets);
      bool ok = pr.cert.verified;
      auto pieces = classify_preimages(pr.bijection, pr);
      for (const auto& piece : pieces) {
        // dichotomy is asserted inside; double-check the representation
        if (!piece.is_point && !(piece.ball.is_open() && piece.ball.radius().is_finite()))
          ok = false;
      }
      rec["length"] = pr.bijection.length();
      rec["polydiscs"] = static_cast<int>(pr.cert.polydiscs.size());
      rec["status"] = ok ? "ok" : "FAIL";
      if (!ok) ++res.failed;
    } catch (const Error& err) {
      ++res.failed;
      rec["status"] = "FAIL";
      rec["error"] = err.what();
    }
    entries.push_back(rec);
  }
  // the finite-set example: two points in one class
  {
    ++res.total;
    Json rec;
    rec["name"] = "example_two_points";
    FieldPtr f = cfg.field;
    SwissCheese two = SwissCheese::of_point(Puiseux::t(f))
                          .unite(SwissCheese::of_point(
                              Puiseux::t(f) + Puiseux::monomial(KElem::one(f), Rational(3))));
    try {
      PullbackResult pr = to_rv_pullback(FiberedSet::of_set(two), cfg.budgets);
      auto pieces = classify_preimages(pr.bijection, pr);
      bool ok = pr.cert.verified && pr.bijection.length() == 2;
      int points = 0;
      for (const auto& piece : pieces)
        if (piece.is_point) ++points;
      ok = ok && points == 2;
      rec["length"] = pr.bijection.length();
      rec["status"] = ok ? "ok" : "FAIL";
      if (!ok) ++res.failed;
    } catch (const Error& err) {
      ++res.failed;
      rec["status"] = "FAIL";
      rec["error"] = err.what();
    }
    entries.push_back(rec);
  }
  res.pass = res.failed == 0;
  res.details["entries"] = entries;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_rvsplit(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "rvsplit";
  std::mt19937_64 rng(cfg.seed ^ 0x2b2b2bull);
  std::uniform_int_distribution<int> ksize(2, 6);
  std::uniform_int_distribution<long> resd(-9, 9);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  Json failures = Json::array();
  for (int i = 0; i < 200; ++i) {
    int k = ksize(rng);
    Rational gamma(num(rng), den(rng));
    std::vector<Puiseux> pts;
    while (static_cast<int>(pts.size()) < k) {
      long c = resd(rng);
      if (c == 0) continue;
      Puiseux x = Puiseux::monomial(KElem::of(cfg.field, Rational(c)), gamma);
      std::uniform_int_distribution<int> deep(0, 2);
      if (deep(rng) == 0)
        x = x + Puiseux::monomial(KElem::of(cfg.field, Rational(std::abs(resd(rng)) + 1)),
                                  gamma + Rational(1, 2));
      bool dup = false;
      for (const auto& p : pts)
        if ((p - x).is_exact_zero()) dup = true;
      if (!dup) pts.push_back(x);
    }
    // recenter to average 0
    Puiseux c = average(pts);
    std::vector<Puiseux> centered;
    for (const auto& p : pts) centered.push_back(p - c);
    ++res.total;
    std::map<std::string, int> classes;
    for (const auto& p : centered) {
      RvElem r = p.is_exact_zero() ? RvElem::infinity(cfg.field) : p.rv();
      classes[r.to_string()]++;
    }
    bool ok = classes.size() >= 2;
    // injectivity of the coding on the original set
    std::vector<std::vector<Puiseux>> tuples;
    for (const auto& p : pts) tuples.push_back({p});
    RvCode code = finite_set_rv_code(tuples);
    for (size_t a = 0; a < code.codes.size() && ok; ++a)
      for (size_t b = a + 1; b < code.codes.size() && ok; ++b)
        if (code.codes[a] == code.codes[b]) ok = false;
    if (!ok) {
      ++res.failed;
      Json f;
      f["gamma"] = gamma.to_string();
      f["size"] = k;
      failures.push_back(f);
    }
  }
  res.pass = res.failed == 0;
  res.details["failures"] = failures;
  res.elapsed_ms = timer.ms();
  return res;
}

namespace {

// sample points of a b3 piece; empty when the piece is a single point
std::vector<Puiseux> sample_piece_points(const B3Piece& piece, const FieldPtr& f, int count,
                                         uint64_t seed) {
  std::vector<Puiseux> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> resd(1, 9);
  std::uniform_int_distribution<long> dnum(1, 6);
  if (piece.kind == B3Piece::Kind::Point) return out;
  if (piece.kind == B3Piece::Kind::BallPiece) {
    const Ball& b = piece.ball;
    Rational base = b.radius().is_finite() ? b.radius().value() : Rational(-3);
    for (int i = 0; i < count; ++i) {
      Rational e = base + Rational(dnum(rng), b.is_open() ? 1 : 2) +
                   (b.is_open() ? Rational(1, 3) : Rational(0));
      out.push_back(b.center() + Puiseux::monomial(KElem::of(f, Rational(resd(rng))), e));
    }
    return out;
  }
  // class family: sample classes, then points inside each class ball
  for (const auto& cls : piece.family.sample(f, std::max(2, count / 4), seed ^ 0x77ull)) {
    if (cls.is_infinity()) continue;
    Puiseux cc = piece.center + section(SectionKind::RvSection, cls);
    for (int i = 0; i < 3; ++i) {
      Rational e = cls.gamma() + Rational(dnum(rng), 2);
      out.push_back(cc + Puiseux::monomial(KElem::of(f, Rational(resd(rng))), e));
      if (static_cast<int>(out.size()) >= count) return out;
    }
  }
  return out;
}

}  // namespace

SuiteResult suite_bmin(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "bmin";
  Json entries = Json::array();
  // b1 on a slice of the corpus
  int taken = 0;
  for (const auto& e : builtin_corpus()) {
    if (taken >= 8) break;
    FieldPtr f = parse_field_spec(e.field);
    FPtr phi = parse_formula(f, e.formula);
    ++taken;
    ++res.total;
    Json rec;
    rec["name"] = std::string("b1:") + e.name;
    try {
      DefinableSet1 d = decompose1(phi, "X", f, cfg.budgets);
      if (d.cheese.is_empty()) {
        rec["status"] = "ok (empty)";
        entries.push_back(rec);
        continue;
      }
      B1Witness w = b1_witness(d, cfg.budgets);
      bool ok = w.pullback.cert.verified;
      for (const auto& piece : w.fibers)
        if (!piece.is_point && !piece.ball.is_open()) ok = false;
      rec["fibers"] = static_cast<int>(w.fibers.size());
      rec["status"] = ok ? "ok" : "FAIL";
      if (!ok) ++res.failed;
    } catch (const Error& err) {
      ++res.failed;
      rec["status"] = "FAIL";
      rec["error"] = err.what();
    }
    entries.push_back(rec);
  }
  // b3 for the three polynomial maps on three domains over Q[y]/(y^2-3)
  {
    FieldPtr f3 = parse_field_spec("y^2 - 3");
    struct Case {
      std::string fpoly;
      std::string domain;
    };
    std::vector<Case> cases = {
        {"X^2", "rv(X - 1) > [1;1]"},
        {"X^2", "rv(X) <= [2;1]"},
        {"X^2", "rv(X) = [0;1]"},
        {"X^3 - t*X", "rv(X - 1) > [1;1]"},
        {"X^3 - t*X", "rv(X) <= [2;1]"},
        {"X^3 - t*X", "rv(X) = [0;1]"},
        {"(X - 1)*(X - 1 - t)", "rv(X - 1) > [1;1]"},
        {"(X - 1)*(X - 1 - t)", "rv(X) <= [2;1]"},
        {"(X - 1)*(X - 1 - t)", "rv(X) = [0;1]"},
    };
    std::mt19937_64 rng(cfg.seed ^ 0xb3b3ull);
    for (const auto& c : cases) {
      ++res.total;
      Json rec;
      rec["name"] = "b3:" + c.fpoly + " on " + c.domain;
      try {
        VfPoly F = vf_term_to_poly(parse_vf_term(f3, c.fpoly), "X", f3);
        FPtr dom = parse_formula(f3, c.domain);
        DefinableSet1 d = decompose1(dom, "X", f3, cfg.budgets);
        B3Witness w = b3_witness_poly(F, d, cfg.budgets);
        bool ok = true;
        int checked_pairs = 0;
        for (const auto& piece : w.pieces) {
          auto pts = sample_piece_points(piece, f3, 12,
                                         cfg.seed ^ fnv_hash(rec["name"].get<std::string>()));
          if (piece.kind == B3Piece::Kind::Point) continue;
          for (size_t i = 0; i < pts.size() && ok; ++i)
            for (size_t j = i + 1; j < pts.size() && ok && checked_pairs < 30; ++j) {
              Puiseux diff = F.eval(pts[i]) - F.eval(pts[j]);
              Puiseux xdiff = pts[i] - pts[j];
              if (xdiff.is_exact_zero()) continue;
              ++checked_pairs;
              if (piece.injective && diff.is_exact_zero()) ok = false;
              if (!piece.injective && !diff.is_exact_zero()) ok = false;
            }
        }
        rec["pieces"] = static_cast<int>(w.pieces.size());
        rec["pairs"] = checked_pairs;
        rec["status"] = ok ? "ok" : "FAIL";
        if (!ok) ++res.failed;
      } catch (const Error& err) {
        ++res.failed;
        rec["status"] = "FAIL";
        rec["error"] = err.what();
      }
      entries.push_back(rec);
    }
  }
  res.pass = res.failed == 0;
  res.details["entries"] = entries;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_contrast(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "contrast";
  res.total = 1;
  try {
    ContrastReport rep = dag_local_cmin_counterexample(cfg.field, 50, 5, cfg.budgets);
    res.details = to_json(rep);
    bool ok = rep.dag_members_verified && rep.dag_balls_all_punctured &&
              rep.ddag_singleton_verified && rep.member_samples >= 50;
    if (!ok) res.failed = 1;
  } catch (const Error& err) {
    res.failed = 1;
    res.details["error"] = err.what();
  }
  res.pass = res.failed == 0;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_volpart(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "volpart";
  Json entries = Json::array();
  for (const auto& e : builtin_section_corpus()) {
    FieldPtr f = parse_field_spec(e.field);
    FPtr phi = parse_formula(f, e.formula);
    ++res.total;
    Json rec;
    rec["name"] = e.name;
    try {
      Reduction red = reduce_with_sections(phi, "X", SectionKind::KSection, f, cfg.budgets);
      // complexity strictly decreases per stage
      bool ok = true;
      int prev = complexity(phi);
      for (const auto& stage : red.stages) {
        int cur = complexity(stage.reduced);
        if (!(cur < prev)) ok = false;
        prev = cur;
      }
      // the composed partition is volumetric
      auto p = [&red](const Puiseux& a) { return red.p(a); };
      VolumetricCheck chk =
          is_volumetric(p, SwissCheese::whole(f), 100, cfg.seed ^ fnv_hash(e.formula));
      if (!chk.ok) ok = false;
      // the stage-one term partitions are volumetric
      for (const auto& s : red.stages.front().sn_args) {
        VolpartResult vr = volpart_term(s, "X", SectionKind::KSection, f, cfg.budgets);
        auto ps = [&vr](const Puiseux& a) { return vr.partition.eval(a); };
        VolumetricCheck c2 =
            is_volumetric(ps, SwissCheese::whole(f), 100, cfg.seed ^ 0x1234ull);
        if (!c2.ok) ok = false;
      }
      // evaluation soundness at 100 points
      int agree = 0, trials = 0;
      for (const auto& x :
           probe_points(SwissCheese::whole(f), f, 100, cfg.seed ^ fnv_hash(e.name))) {
        Assignment a;
        a.vf["X"] = x;
        bool direct = eval_qf(phi, a, SectionKind::KSection);
        FPtr fiber = red.fiber_formula(x);
        bool reduced = eval_qf(fiber, a, SectionKind::None);
        ++trials;
        if (direct == reduced) ++agree;
      }
      rec["soundness"] = Json{{"agree", agree}, {"trials", trials}};
      if (agree != trials) ok = false;
      rec["status"] = ok ? "ok" : "FAIL";
      if (!ok) ++res.failed;
    } catch (const Error& err) {
      ++res.failed;
      rec["status"] = "FAIL";
      rec["error"] = err.what();
    }
    entries.push_back(rec);
  }
  res.pass = res.failed == 0;
  res.details["entries"] = entries;
  res.elapsed_ms = timer.ms();
  return res;
}

SuiteResult suite_lower(const SessionConfig& cfg) {
  Timer timer;
  SuiteResult res;
  res.name = "lower";
  Json entries = Json::array();
  for (const auto& e : builtin_section_corpus()) {
    FieldPtr f = parse_field_spec(e.field);
    FPtr phi = parse_formula(f, e.formula);
    ++res.total;
    Json rec;
    rec["name"] = e.name;
    try {
      Lowered low = lower_complexity(phi);
      bool ok = complexity(low.formula) < complexity(phi);
      int agree = 0, trials = 0;
      for (const auto& x :
           probe_points(SwissCheese::whole(f), f, 40, cfg.seed ^ fnv_hash(e.name))) {
        if (trials >= 20) break;
        Assignment a;
        a.vf["X"] = x;
        // unique witnesses Z_i = rv(σ_i); skip points where a witness is
        // undefined (the side condition, not a truth value)
        bool defined = true;
        for (const auto& [name, term] : low.definitions) {
          auto v = eval_rv_term(term, a, SectionKind::RvSection);
          if (!v) { defined = false; break; }
          a.rv[name] = *v;
        }
        if (!defined) continue;
        ++trials;
        bool before = eval_qf(phi, a, SectionKind::RvSection);
        bool after = eval_qf(low.formula, a, SectionKind::RvSection);
        if (before == after) ++agree;
      }
      rec["equivalence"] = Json{{"agree", agree}, {"trials", trials}};
      if (agree != trials) ok = false;
      rec["status"] = ok ? "ok" : "FAIL";
      if (!ok) ++res.failed;
    } catch (const Error& err) {
      ++res.failed;
      rec["status"] = "FAIL";
      rec["error"] = err.what();
    }
    entries.push_back(rec);
  }
  res.pass = res.failed == 0;
  res.details["entries"] = entries;
  res.elapsed_ms = timer.ms();
  return res;
}

std::vector<std::string> all_suite_names() {
  return {"newton", "lift", "cmin", "pullback", "rvsplit", "bmin", "contrast", "volpart", "lower"};
}

std::vector<SuiteResult> run_suites(const SessionConfig& cfg,
                                    const std::vector<std::string>& names) {
  std::vector<SuiteResult> out;
  for (const auto& n : names) {
    if (n == "newton") out.push_back(suite_newton(cfg));
    else if (n == "lift") out.push_back(suite_lift(cfg));
    else if (n == "cmin") out.push_back(suite_cmin(cfg));
    else if (n == "pullback") out.push_back(suite_pullback(cfg));
    else if (n == "rvsplit") out.push_back(suite_rvsplit(cfg));
    else if (n == "bmin") out.push_back(suite_bmin(cfg));
    else if (n == "contrast") out.push_back(suite_contrast(cfg));
    else if (n == "volpart") out.push_back(suite_volpart(cfg));
    else if (n == "lower") out.push_back(suite_lower(cfg));
    else fail(ErrorKind::IOError, "unknown suite " + n);
  }
  return out;
}

Json suites_to_json(const std::vector<SuiteResult>& results) {
  Json j = Json::array();
  for (const auto& r : results) {
    Json e;
    e["suite"] = r.name;
    e["pass"] = r.pass;
    e["total"] = r.total;
    e["failed"] = r.failed;
    e["details"] = r.details;
    j.push_back(e);
  }
  return j;
}

}  // namespace rvkit
