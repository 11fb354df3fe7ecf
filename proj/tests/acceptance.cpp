// Acceptance suite: one line per criterion, every tolerance pinned here.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "rvkit/corpus.hpp"
#include "rvkit/suites.hpp"

using namespace rvkit;

namespace {

struct Criterion {
  std::string label;
  bool pass;
  std::string detail;
};

bool within(double ms, double bound_ms) { return ms < bound_ms; }

}  // namespace

int main() {
  SessionConfig cfg;
  cfg.seed = 1;
  std::vector<Criterion> criteria;

  // 1. Newton oracle: 100/100 random factorizations, < 10 s
  {
    SuiteResult r = suite_newton(cfg);
    criteria.push_back({"1 newton oracle (100 random factorizations)",
                        r.pass && r.total >= 100 && within(r.elapsed_ms, 10000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 2. Root lifting: 50 satisfying pairs at precision 20 plus named rejections, < 30 s
  {
    SuiteResult r = suite_lift(cfg);
    criteria.push_back({"2 rv root lifting (50 pairs, v(F(b)) > 20)",
                        r.pass && r.total >= 50 && within(r.elapsed_ms, 30000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 3. C-minimality oracle: >= 25 formulas, >= 200 probes each, 100%, < 60 s
  {
    SuiteResult r = suite_cmin(cfg);
    criteria.push_back({"3 decomposition vs probe oracle (corpus of " +
                            std::to_string(builtin_corpus().size()) + ")",
                        r.pass && r.total >= 25 && within(r.elapsed_ms, 60000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 4. Deformed RV-pullbacks with verified certificates and the preimage
  //    dichotomy, < 60 s
  {
    SuiteResult r = suite_pullback(cfg);
    criteria.push_back({"4 deformed RV-pullbacks and preimage dichotomy",
                        r.pass && within(r.elapsed_ms, 60000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 5. Centered-set splitting: 200/200 and injective coding, < 10 s
  {
    SuiteResult r = suite_rvsplit(cfg);
    criteria.push_back({"5 centered-set rv splitting (200 sets)",
                        r.pass && r.total >= 200 && within(r.elapsed_ms, 10000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 6. b-minimality witnesses: b1 fibers certified, b3 for the three maps on
  //    three domains with 30-pair sampling, < 60 s
  {
    SuiteResult r = suite_bmin(cfg);
    criteria.push_back({"6 b-minimality witnesses (b1 corpus, b3 three maps)",
                        r.pass && within(r.elapsed_ms, 60000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 7. Section contrast: singleton under the K section, punctured balls under
  //    the full section at 50 sampled members, < 10 s
  {
    SuiteResult r = suite_contrast(cfg);
    criteria.push_back({"7 section contrast (singleton vs punctured family)",
                        r.pass && within(r.elapsed_ms, 10000),
                        (r.pass ? "verified" : "failed") + std::string(" in ") +
                            std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 8. Volumetric partitions: 100-sample checks, 100-point reduction
  //    soundness, strict complexity decrease, < 60 s
  {
    SuiteResult r = suite_volpart(cfg);
    criteria.push_back({"8 volumetric partitions and reduction soundness",
                        r.pass && within(r.elapsed_ms, 60000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 9. Complexity lowering: 20 formulas, 20 evaluation points each, < 10 s
  {
    SuiteResult r = suite_lower(cfg);
    criteria.push_back({"9 complexity lowering (20 formulas)",
                        r.pass && r.total >= 20 && within(r.elapsed_ms, 10000),
                        std::to_string(r.total - r.failed) + "/" + std::to_string(r.total) +
                            " in " + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms"});
  }
  // 10. Determinism: the full check run twice with one seed is byte-identical
  {
    auto names = all_suite_names();
    Json first = suites_to_json(run_suites(cfg, names));
    Json second = suites_to_json(run_suites(cfg, names));
    bool same = first.dump() == second.dump();
    criteria.push_back({"10 determinism (identical JSON across runs)", same,
                        same ? "byte-identical" : "MISMATCH"});
  }

  int failed = 0;
  for (const auto& c : criteria) {
    std::printf("[%s] criterion %s — %s\n", c.pass ? "PASS" : "FAIL", c.label.c_str(),
                c.detail.c_str());
    if (!c.pass) ++failed;
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
