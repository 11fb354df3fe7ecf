#include "rvkit/corpus.hpp"

#include <fstream>

#include "rvkit/errors.hpp"

namespace rvkit {

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"rv_ball_of_one", "Q", "rv(X) = [0;1]", "the rv-ball of 1"},
      {"worked_two_balls", "Q", "rv(X^2 - t^2) = [3;1]",
       "two open balls of radius 2 around t + t^2/2 and its negative"},
      {"two_points", "Q", "X*(X - 1) = 0", "VF equality, exact roots"},
      {"co_point", "Q", "X - 2 != 0", "VF disequality"},
      {"value_le", "Q", "rv(X) <= [1;1]", "value comparison, complement of a ball"},
      {"value_gt", "Q", "rv(X) > [0;1]", "strict value comparison"},
      {"square_identity", "Q", "rv(X)*rv(X) = rv(X^2)", "holds on all of VF"},
      {"union_with_point", "Q", "rv(X^2 - t^2) = [3;1] | X = 0", "disjunction"},
      {"kterm_ball", "Q", "rv(X)*[0;1] + rv(X - 1)*[0;1] = 0",
       "K-term equation: residue 1/2 class"},
      {"kterm_empty", "Q", "rv(X)*[0;1] + rv(X)*[0;1] = 0", "K-term with empty solution"},
      {"kterm_negated", "Q", "rv(X)*[0;1] + rv(X - 1)*[0;1] != 0",
       "negated K-term: definedness minus the solution"},
      {"annulus_le", "Q", "rv(X^2 - t^2) <= [4;1]", "valuation sublevel set"},
      {"annulus_gt", "Q", "rv(X^2 - t^2) > [4;1]", "valuation strict superlevel set"},
      {"cubic_class", "Q", "rv(X^3 - t*X) = [3;1]", "cubic with zero root"},
      {"conj_class_minus_roots", "Q", "X^2 - t^2 != 0 & rv(X) = [1;1]",
       "class with the roots removed"},
      {"shifted_product", "Q", "rv((X - 1)*(X - 1 - t)) = [1;-1]", "product near 1"},
      {"co_single_point", "Q", "rv(X - t) != INF", "complement of a point"},
      {"point_zero", "Q", "rv(X) = INF", "the point 0"},
      {"mixed_products", "Q", "rv(X)^2*rv(X - t^2) <= rv(t)*rv(X)",
       "products on both sides of an inequality"},
      {"needs_sqrt2", "y^2 - 2", "X^2 - 2 = 0", "roots in a quadratic field"},
      {"rational_roots", "Q", "X^2 - 3*X + 2 = 0", "two rational points"},
      {"co_rational_roots", "Q", "X^2 - 3*X + 2 != 0", "their complement"},
      {"forced_ball", "Q", "rv(X - 1) <= [0;1] & rv(X) > [0;1]", "conjunction forcing a ball"},
      {"const_scaled", "Q", "rv(X)*[1;2]^2 <= [1;1]", "negative-valuation far region"},
      {"zero_root_pair", "Q", "rv(X + X^2) = [1;1]", "roots 0 and -1"},
      {"negative_valuation", "Q", "rv(t*X^2) = rv(X)", "class at valuation -1"},
      {"two_exact_points", "Q", "(X - 1)*(X - 1 - t) = 0", "nearby exact points"},
      {"fractional_level", "Q", "rv(X^2) <= rv(t^3)", "fractional radius 3/2"},
      {"two_classes", "Q", "rv(X) = [0;1] | rv(X) = [0;2]", "union of rv-balls"},
      {"ball_of_one", "Q", "rv(X) <= [0;1] & rv(X - 1) > [0;1]", "the maximal open ball at 1"},
  };
  return corpus;
}

const std::vector<CorpusEntry>& builtin_section_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"distinguishing", "Q", "sn(rv(X - 1)) - (X - 1) = 0 & rv(X) = [0;1]",
       "the formula separating the two section theories"},
      {"sn_fixed_point", "Q", "sn(rv(X)) - X = 0", "section image"},
      {"sn_square", "Q", "sn(rv(X^2 - 1)) - X = 0", "complexity-1 rewrite target"},
      {"sn_shift", "Q", "sn(rv(X - 1)) - 1 = 0", "constant section value"},
      {"sn_in_rv", "Q", "rv(sn(rv(X)) + 1) = [0;1]", "sn under rv"},
      {"sn_scaled", "Q", "sn(rv(X)*[0;2]) - 2*X = 0", "scaled class"},
      {"sn_kterm", "Q", "sn(rv(X)*[0;1] + rv(X - 1)*[0;1]) = 0", "section of a K-term"},
      {"sn_nested", "Q", "sn(rv(sn(rv(X)))) - X = 0", "complexity 2"},
      {"sn_both_sides", "Q", "sn(rv(X)) - sn(rv(X - 1)) = 0", "two section terms"},
      {"sn_in_poly", "Q", "sn(rv(X))*X - 1 = 0", "section times the variable"},
      {"sn_vs_const", "Q", "sn(rv(X)) - t = 0", "section equals a monomial"},
      {"sn_sum_shift", "Q", "sn(rv(X) + rv(X - 1)) - 2*X + 1 = 0", "K-sum argument"},
      {"sn_square_eq", "Q", "sn(rv(X))^2 - X^2 = 0", "squared section"},
      {"sn_rv_eq", "Q", "rv(sn(rv(X)) - X) = INF", "section fixed points via rv"},
      {"sn_rv_ne", "Q", "rv(sn(rv(X)) - X) != INF", "non-fixed points"},
      {"sn_prod_classes", "Q", "rv(sn(rv(X))*X) = [2;1]", "product with the variable"},
      {"sn_disj", "Q", "sn(rv(X)) - X = 0 | rv(X) = [0;2]", "disjunction with a class"},
      {"sn_conj", "Q", "sn(rv(X)) - X = 0 & rv(X) = [0;1]", "conjunction with a class"},
      {"sn_linear", "Q", "sn(rv(X - 1)) + sn(rv(X)) - X = 0", "two section parameters"},
      {"sn_nested_mix", "Q", "sn(rv(sn(rv(X)) + 1)) - 1 = 0", "nested with a shift"},
  };
  return corpus;
}

Json corpus_record(const CorpusEntry& e, const Budgets& budgets) {
  FieldPtr f = parse_field_spec(e.field);
  Json rec;
  rec["name"] = e.name;
  rec["field"] = e.field;
  rec["formula"] = e.formula;
  rec["note"] = e.note;
  FPtr phi = parse_formula(f, e.formula);
  DefinableSet1 d = decompose1(phi, "X", f, budgets);
  rec["expected"] = to_json(d);
  rec["provenance_tag"] = "engine";
  return rec;
}

void corpus_save(const std::string& path, const Budgets& budgets) {
  Json all = Json::array();
  for (const auto& e : builtin_corpus()) all.push_back(corpus_record(e, budgets));
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IOError, "cannot write " + path);
  out << all.dump(2) << "\n";
}

Json corpus_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IOError, "cannot read " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    fail(ErrorKind::IOError, std::string("bad corpus JSON: ") + ex.what());
  }
  if (!j.is_array()) fail(ErrorKind::IOError, "corpus file must be a JSON array");
  return j;
}

void corpus_check(const std::string& path, const Budgets& budgets) {
  Json golden = corpus_load(path);
  std::vector<std::string> diffs;
  for (const auto& rec : golden) {
    CorpusEntry e;
    e.name = rec.at("name").get<std::string>();
    e.field = rec.at("field").get<std::string>();
    e.formula = rec.at("formula").get<std::string>();
    e.note = rec.value("note", "");
    Json fresh = corpus_record(e, budgets);
    if (fresh.at("expected") != rec.at("expected"))
      diffs.push_back(e.name + ": expected " + rec.at("expected").dump() + ", got " +
                      fresh.at("expected").dump());
  }
  if (!diffs.empty()) {
    std::string msg = std::to_string(diffs.size()) + " corpus mismatches; first: " + diffs[0];
    fail(ErrorKind::GoldenMismatch, msg);
  }
}

}  // namespace rvkit
