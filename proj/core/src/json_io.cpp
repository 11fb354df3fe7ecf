#include "rvkit/json_io.hpp"

#include "rvkit/errors.hpp"
#include "rvkit/formula.hpp"
#include "rvkit/session.hpp"

namespace rvkit {

Json to_json(const GammaValue& g) { return g.to_string(); }

Json to_json(const RvElem& t) { return t.to_string(); }

Json to_json(const Ball& b) {
  Json j;
  j["center"] = b.center().to_string();
  j["radius"] = b.radius().to_string();
  j["kind"] = b.is_open() ? "open" : "closed";
  return j;
}

Json to_json(const SwissCheese& s) {
  Json j;
  j["positives"] = Json::array();
  for (const auto& b : s.positive_balls()) j["positives"].push_back(to_json(b));
  j["holes"] = Json::array();
  for (const auto& b : s.hole_balls()) j["holes"].push_back(to_json(b));
  return j;
}

Json to_json(const DefinableSet1& d) {
  Json j;
  j["formula"] = print_formula(d.formula);
  j["variable"] = d.var;
  j["set"] = to_json(d.cheese);
  j["empty"] = d.cheese.is_empty();
  Json prov = Json::array();
  for (const auto& p : d.provenance_polys) prov.push_back(p.to_string());
  j["provenance_polynomials"] = prov;
  Json bp = Json::object();
  for (const auto& [ball, lits] : d.ball_provenance) {
    Json arr = Json::array();
    for (const auto& l : lits) arr.push_back(l);
    bp[ball] = arr;
  }
  j["ball_provenance"] = bp;
  return j;
}

Json to_json(const NewtonPolygon& np) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& [i, v] : np.vertices)
    j["vertices"].push_back(Json{{"index", i}, {"valuation", v.to_string()}});
  j["segments"] = Json::array();
  for (const auto& s : np.segments) {
    Json seg;
    seg["slope"] = s.slope.to_string();
    seg["length"] = s.length;
    seg["root_valuation"] = (-s.slope).to_string();
    seg["residual"] = s.residual.to_string();
    j["segments"].push_back(seg);
  }
  j["order_at_zero"] = np.order_at_zero;
  return j;
}

Json to_json(const RootClasses& rc) {
  Json j;
  j["classes"] = Json::array();
  for (const auto& [t, m] : rc.classes)
    j["classes"].push_back(Json{{"rv", t.to_string()}, {"multiplicity", m}});
  j["unresolved"] = Json::array();
  for (const auto& u : rc.unresolved)
    j["unresolved"].push_back(
        Json{{"valuation", u.valuation.to_string()}, {"factor", u.factor.to_string()}});
  j["zero_root_multiplicity"] = rc.zero_root_multiplicity;
  return j;
}

Json to_json(const SpecialBijection& t) {
  Json j;
  j["length"] = t.length();
  j["steps"] = Json::array();
  for (const auto& s : t.steps) {
    if (s.canonical) {
      j["steps"].push_back(Json{{"kind", "canonical"}});
    } else {
      Json c;
      c["kind"] = "centripetal";
      c["locus"] = Json::array();
      for (size_t i = 0; i < s.centripetal.locus.size(); ++i) {
        Json e;
        Json tup = Json::array();
        for (const auto& r : s.centripetal.locus[i]) tup.push_back(r.to_string());
        e["tuple"] = tup;
        e["focus"] = s.centripetal.focus[i].to_string();
        e["root_average_center"] = static_cast<bool>(s.centripetal.used_root_average[i]);
        c["locus"].push_back(e);
      }
      j["steps"].push_back(c);
    }
  }
  return j;
}

Json to_json(const RvPullbackCert& c) {
  Json j;
  j["verified"] = c.verified;
  if (!c.verified) j["witness"] = c.witness;
  j["polydiscs"] = Json::array();
  for (const auto& pd : c.polydiscs) {
    Json e;
    Json tup = Json::array();
    for (const auto& r : pd.tuple) tup.push_back(r.to_string());
    e["tuple"] = tup;
    if (pd.family) e["family"] = pd.family->to_string();
    e["ball"] = to_json(pd.ball);
    j["polydiscs"].push_back(e);
  }
  return j;
}

Json to_json(const PullbackResult& r) {
  Json j;
  j["bijection"] = to_json(r.bijection);
  j["certificate"] = to_json(r.cert);
  return j;
}

Json to_json(const std::vector<PreimagePiece>& pieces) {
  Json j = Json::array();
  for (const auto& p : pieces) {
    Json e;
    Json tup = Json::array();
    for (const auto& r : p.tuple) tup.push_back(r.to_string());
    e["tuple"] = tup;
    if (p.is_point) e["point"] = p.point.to_string();
    else e["open_ball"] = to_json(p.ball);
    j.push_back(e);
  }
  return j;
}

Json to_json(const B1Witness& w) {
  Json j;
  j["pullback"] = to_json(w.pullback);
  j["fibers"] = to_json(w.fibers);
  return j;
}

Json to_json(const B3Witness& w) {
  Json j;
  j["map"] = w.map_description;
  j["pieces"] = Json::array();
  for (const auto& p : w.pieces) {
    Json e;
    switch (p.kind) {
      case B3Piece::Kind::Point:
        e["kind"] = "point";
        e["point"] = p.point.to_string();
        break;
      case B3Piece::Kind::BallPiece:
        e["kind"] = "ball";
        e["ball"] = to_json(p.ball);
        break;
      case B3Piece::Kind::ClassFamily:
        e["kind"] = "class_family";
        e["center"] = p.center.to_string();
        e["family"] = p.family.to_string();
        break;
    }
    e["certificate"] = p.injective ? "injective" : "constant";
    j["pieces"].push_back(e);
  }
  return j;
}

Json to_json(const RvCode& c) {
  Json j;
  j["width"] = c.width;
  j["codes"] = Json::array();
  for (const auto& code : c.codes) {
    Json tup = Json::array();
    for (const auto& t : code) tup.push_back(t.to_string());
    j["codes"].push_back(tup);
  }
  return j;
}

Json to_json(const ContrastReport& r) {
  Json j;
  j["dag_members_verified"] = r.dag_members_verified;
  j["dag_balls_all_punctured"] = r.dag_balls_all_punctured;
  j["member_samples"] = r.member_samples;
  j["ball_probes"] = r.ball_probes;
  j["evidence"] = Json::array();
  for (const auto& e : r.evidence) j["evidence"].push_back(e);
  j["ddag_singleton_verified"] = r.ddag_singleton_verified;
  if (r.ddag_point) j["ddag_point"] = r.ddag_point->to_string();
  return j;
}

Json to_json(const LocalCMin& l) {
  Json j;
  j["stages"] = static_cast<int>(l.reduction.stages.size());
  Json samples = Json::array();
  for (const auto& s : l.samples) {
    Json e;
    e["a"] = s.a.to_string();
    e["p"] = s.p.to_string();
    e["member"] = s.member;
    e["local_set"] = to_json(s.local);
    samples.push_back(e);
  }
  j["samples"] = samples;
  return j;
}

Ball ball_from_json(const FieldPtr& f, const Json& j) {
  auto center = parse_puiseux(f, j.at("center").get<std::string>());
  auto radius = GammaValue::parse(j.at("radius").get<std::string>());
  if (!radius) fail(ErrorKind::IOError, "bad radius in ball JSON");
  std::string kind = j.at("kind").get<std::string>();
  return kind == "open" ? Ball::open(center, *radius) : Ball::closed(center, *radius);
}

SwissCheese cheese_from_json(const FieldPtr& f, const Json& j) {
  SwissCheese s = SwissCheese::empty_set(f);
  for (const auto& b : j.at("positives")) s = s.unite(SwissCheese::of_ball(ball_from_json(f, b)));
  for (const auto& b : j.at("holes")) s = s.subtract(SwissCheese::of_ball(ball_from_json(f, b)));
  return s;
}

FieldPtr parse_field_spec(const std::string& spec) {
  if (spec.empty() || spec == "Q" || spec == "q") return NumberField::rationals();
  // monic polynomial in y: accept "y^2 - 2" style via the KElem machinery:
  // parse as a VF constant expression in y over Q and read the coefficients
  // from a small dedicated scan instead
  // format: y^d followed by +/- terms c*y^k and constants
  // simplest exact route: evaluate the polynomial coefficients by parsing
  // with a de Bruijn-free mini parser
  std::string s = spec;
  // strip spaces
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  // split into signed monomials
  std::vector<std::pair<Rational, int>> monos;
  size_t i = 0;
  int sign = 1;
  while (i < t.size()) {
    if (t[i] == '+') { sign = 1; ++i; continue; }
    if (t[i] == '-') { sign = -1; ++i; continue; }
    // coefficient
    std::string num;
    while (i < t.size() && (isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/')) num.push_back(t[i++]);
    Rational coeff = num.empty() ? Rational(1) : *Rational::parse(num);
    if (i < t.size() && t[i] == '*') ++i;
    int deg = 0;
    if (i < t.size() && t[i] == 'y') {
      ++i;
      deg = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        std::string d;
        while (i < t.size() && isdigit(static_cast<unsigned char>(t[i]))) d.push_back(t[i++]);
        deg = std::stoi(d);
      }
    }
    monos.push_back({sign > 0 ? coeff : -coeff, deg});
    sign = 1;
  }
  int degree = 0;
  for (const auto& [c, d] : monos) degree = std::max(degree, d);
  if (degree < 1) fail(ErrorKind::TypeError, "field spec must be Q or a monic polynomial in y");
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  for (const auto& [c, d] : monos) coeffs[d] += c;
  if (coeffs[degree] != Rational(1))
    fail(ErrorKind::TypeError, "field modulus must be monic");
  coeffs.pop_back();
  return NumberField::create(coeffs);
}

Budgets parse_budgets(const std::string& spec, Budgets base) {
  Budgets b = base;
  size_t i = 0;
  while (i < spec.size()) {
    size_t j = spec.find(',', i);
    if (j == std::string::npos) j = spec.size();
    std::string item = spec.substr(i, j - i);
    size_t eq = item.find('=');
    if (eq != std::string::npos) {
      std::string key = item.substr(0, eq);
      int val = std::stoi(item.substr(eq + 1));
      if (key == "newtonSteps") b.newton_steps = val;
      else if (key == "caseSplit") b.case_split = val;
      else if (key == "recursionDepth") b.recursion_depth = val;
      else fail(ErrorKind::IOError, "unknown budget key " + key);
    }
    i = j + 1;
  }
  return b;
}

}  // namespace rvkit
