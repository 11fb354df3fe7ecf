// rvkit — exact computations in algebraically closed valued fields over a
// Puiseux-polynomial model: Newton polygons, swiss-cheese decompositions,
// special bijections, and the two section expansions.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "rvkit/corpus.hpp"
#include "rvkit/errors.hpp"
#include "rvkit/json_io.hpp"
#include "rvkit/sections.hpp"
#include "rvkit/suites.hpp"

using namespace rvkit;

namespace {

struct GlobalOpts {
  std::string field = "Q";
  std::string precision = "24";
  uint64_t seed = 1;
  std::string model = "plain";
  bool pretty = false;
};

void emit(const Json& j, const GlobalOpts& g) {
  if (g.pretty) std::cout << j.dump(2) << "\n";
  else std::cout << j.dump() << "\n";
}

SessionConfig make_config(const GlobalOpts& g) {
  SessionConfig cfg;
  cfg.field = parse_field_spec(g.field);
  auto prec = Rational::parse(g.precision);
  if (!prec) fail(ErrorKind::IOError, "bad --precision value");
  cfg.default_precision = *prec;
  cfg.seed = g.seed;
  if (const char* env = std::getenv("RVKIT_BUDGETS"))
    cfg.budgets = parse_budgets(env, cfg.budgets);
  return cfg;
}

SectionKind model_kind(const GlobalOpts& g) {
  if (g.model == "plain") return SectionKind::None;
  if (g.model == "dag") return SectionKind::RvSection;
  if (g.model == "ddag") return SectionKind::KSection;
  fail(ErrorKind::IOError, "unknown --model (use plain|dag|ddag)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact leading-term computations over Puiseux polynomials"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--field", g.field, "residue field: Q or a monic polynomial in y");
  app.add_option("--precision", g.precision, "default working precision (rational)");
  app.add_option("--seed", g.seed, "seed for sampling and probes");
  app.add_option("--model", g.model, "plain | dag (RV section) | ddag (K section)");
  app.add_flag("--pretty", g.pretty, "indent the JSON output");
  app.add_flag("--json", [](int64_t) {}, "JSON output (the default)");

  std::string formula, poly_text, points_text, path, suite, tvalue;
  int precision_override = 0;
  (void)precision_override;

  CLI::App* cmd_decompose = app.add_subcommand("decompose", "one-variable decomposition");
  cmd_decompose->add_option("--formula", formula, "quantifier-free formula in X")->required();

  CLI::App* cmd_exists = app.add_subcommand("exists", "one-variable existential decision");
  cmd_exists->add_option("--formula", formula)->required();

  CLI::App* cmd_newton = app.add_subcommand("newton", "Newton polygon and root classes");
  cmd_newton->add_option("--poly", poly_text, "polynomial in X")->required();
  cmd_newton->add_option("--lift", tvalue, "lift a root in the class [q;c]");

  CLI::App* cmd_pullback = app.add_subcommand("pullback", "deformed RV-pullback of a set");
  cmd_pullback->add_option("--formula", formula)->required();

  CLI::App* cmd_centers = app.add_subcommand("centers", "root-average centers of closed balls");
  cmd_centers->add_option("--formula", formula)->required();

  CLI::App* cmd_rvcode = app.add_subcommand("rvcode", "finite-set injection into RV tuples");
  cmd_rvcode->add_option("--points", points_text, "semicolon-separated points or tuples")
      ->required();

  CLI::App* cmd_sections = app.add_subcommand("sections", "section-term reduction engine");
  cmd_sections->add_option("--formula", formula)->required();

  CLI::App* cmd_check = app.add_subcommand("check", "property suites");
  cmd_check->add_option("--suite", suite, "suite name");
  bool check_all = false;
  cmd_check->add_flag("--all", check_all, "run every suite");

  CLI::App* cmd_corpus = app.add_subcommand("corpus", "golden corpus load/save/check");
  std::string save_path, load_path, check_path;
  cmd_corpus->add_option("--save", save_path, "write the engine corpus to a file");
  cmd_corpus->add_option("--load", load_path, "load and summarize a corpus file");
  cmd_corpus->add_option("--check", check_path, "recompute and compare against a golden file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    SessionConfig cfg = make_config(g);
    const FieldPtr& f = cfg.field;
    if (cmd_decompose->parsed()) {
      FPtr phi = parse_formula(f, formula);
      emit(to_json(decompose1(phi, "X", f, cfg.budgets)), g);
    } else if (cmd_exists->parsed()) {
      FPtr phi = parse_formula(f, formula);
      Json j;
      j["formula"] = formula;
      j["exists"] = decide_exists(phi, "X", f, cfg.budgets);
      emit(j, g);
    } else if (cmd_newton->parsed()) {
      VfPoly F = vf_term_to_poly(parse_vf_term(f, poly_text), "X", f);
      Json j;
      j["poly"] = F.to_string();
      j["polygon"] = to_json(newton_polygon(F));
      j["root_valuations"] = Json::array();
      for (const auto& [v, m] : root_valuations(F))
        j["root_valuations"].push_back(Json{{"valuation", v.to_string()}, {"multiplicity", m}});
      j["root_classes"] = to_json(root_rv_classes(F));
      if (!tvalue.empty()) {
        FPtr lift_phi = parse_formula(f, std::string("rv(X) = ") + tvalue);
        const Literal& lit = lift_phi->lit;
        auto rv_val = eval_rv_term(lit.rhs, Assignment{}, SectionKind::None);
        if (!rv_val || rv_val->is_k_zero())
          fail(ErrorKind::IOError, "--lift expects an RV literal [q;c]");
        Puiseux b = rv_lift_root(F, rv_val->rv(), cfg.default_precision, std::nullopt,
                                 cfg.budgets.newton_steps);
        j["lift"] = Json{{"class", rv_val->rv().to_string()}, {"root", b.to_string()}};
      }
      emit(j, g);
    } else if (cmd_pullback->parsed()) {
      FPtr phi = parse_formula(f, formula);
      DefinableSet1 d = decompose1(phi, "X", f, cfg.budgets);
      FiberedSet fs = FiberedSet::of_set(d.cheese);
      fs.provenance = d.provenance_polys;
      PullbackResult pr = to_rv_pullback(fs, cfg.budgets);
      Json j;
      j["set"] = to_json(d.cheese);
      j["pullback"] = to_json(pr);
      j["preimages"] = to_json(classify_preimages(pr.bijection, pr));
      emit(j, g);
    } else if (cmd_centers->parsed()) {
      FPtr phi = parse_formula(f, formula);
      DefinableSet1 d = decompose1(phi, "X", f, cfg.budgets);
      Json j;
      j["set"] = to_json(d.cheese);
      j["centers"] = Json::array();
      for (const auto& [ball, center] : centers_closed(d, cfg.budgets))
        j["centers"].push_back(
            Json{{"ball", to_json(ball)}, {"center", center.to_string()}});
      emit(j, g);
    } else if (cmd_rvcode->parsed()) {
      // "a; b; c" or "(a, b); (c, d)"
      std::vector<std::vector<Puiseux>> tuples;
      size_t i = 0;
      while (i < points_text.size()) {
        size_t j = points_text.find(';', i);
        if (j == std::string::npos) j = points_text.size();
        std::string item = points_text.substr(i, j - i);
        // strip whitespace and optional parens
        while (!item.empty() && isspace(static_cast<unsigned char>(item.front()))) item.erase(0, 1);
        while (!item.empty() && isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
        if (!item.empty() && item.front() == '(') {
          item = item.substr(1, item.size() - 2);
          std::vector<Puiseux> tuple;
          size_t k = 0;
          while (k < item.size()) {
            size_t c = item.find(',', k);
            if (c == std::string::npos) c = item.size();
            tuple.push_back(parse_puiseux(f, item.substr(k, c - k)));
            k = c + 1;
          }
          tuples.push_back(tuple);
        } else if (!item.empty()) {
          tuples.push_back({parse_puiseux(f, item)});
        }
        i = j + 1;
      }
      emit(to_json(finite_set_rv_code(tuples)), g);
    } else if (cmd_sections->parsed()) {
      SectionKind kind = model_kind(g);
      if (kind == SectionKind::None)
        fail(ErrorKind::IOError, "sections needs --model dag or --model ddag");
      FPtr phi = parse_formula(f, formula);
      Json j;
      j["formula"] = formula;
      j["model"] = g.model;
      if (kind == SectionKind::KSection) {
        LocalCMin lc = local_cmin_decompose(phi, "X", f, 8, cfg.seed, cfg.budgets);
        j["local_cmin"] = to_json(lc);
        // when the set is a single point the decomposition shows it directly
        FPtr fiber = lc.reduction.fiber_formula(Puiseux::one(f));
        DefinableSet1 dec = decompose1(fiber, "X", f, cfg.budgets);
        j["fiber_at_one"] = to_json(dec.cheese);
      } else {
        Reduction red = reduce_with_sections(phi, "X", kind, f, cfg.budgets);
        j["stages"] = static_cast<int>(red.stages.size());
        Json stage_json = Json::array();
        for (const auto& s : red.stages) {
          Json e;
          e["terms"] = Json::array();
          for (const auto& t : s.sn_args) e["terms"].push_back(print_rv_term(t));
          e["reduced"] = print_formula(s.reduced);
          stage_json.push_back(e);
        }
        j["stage_detail"] = stage_json;
        if (formula == "sn(rv(X - 1)) - (X - 1) = 0 & rv(X) = [0;1]")
          j["contrast"] = to_json(dag_local_cmin_counterexample(f, 50, 5, cfg.budgets));
      }
      emit(j, g);
    } else if (cmd_check->parsed()) {
      std::vector<std::string> names;
      if (check_all || suite.empty()) names = all_suite_names();
      else names.push_back(suite);
      auto results = run_suites(cfg, names);
      Json j;
      j["seed"] = cfg.seed;
      j["suites"] = suites_to_json(results);
      bool all_pass = true;
      for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.total - r.failed
                  << "/" << r.total << ", " << static_cast<long>(r.elapsed_ms) << " ms)\n";
      }
      emit(j, g);
      return all_pass ? 0 : 1;
    } else if (cmd_corpus->parsed()) {
      if (!save_path.empty()) {
        corpus_save(save_path, cfg.budgets);
        Json j;
        j["saved"] = save_path;
        j["entries"] = static_cast<int>(builtin_corpus().size());
        emit(j, g);
      } else if (!check_path.empty()) {
        corpus_check(check_path, cfg.budgets);
        Json j;
        j["checked"] = check_path;
        j["status"] = "ok";
        emit(j, g);
      } else if (!load_path.empty()) {
        Json loaded = corpus_load(load_path);
        Json j;
        j["loaded"] = load_path;
        j["entries"] = static_cast<int>(loaded.size());
        Json names = Json::array();
        for (const auto& rec : loaded) names.push_back(rec.at("name"));
        j["names"] = names;
        emit(j, g);
      } else {
        fail(ErrorKind::IOError, "corpus needs one of --save/--load/--check");
      }
    }
  } catch (const Error& e) {
    Json err;
    err["error"] = error_kind_name(e.kind());
    err["detail"] = e.detail();
    std::cout << err.dump() << "\n";
    return e.kind() == ErrorKind::IOError || e.kind() == ErrorKind::SyntaxError ? 2 : 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "internal";
    err["detail"] = e.what();
    std::cout << err.dump() << "\n";
    return 1;
  }
  return 0;
}
