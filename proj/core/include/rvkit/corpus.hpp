#pragma once

#include <string>
#include <vector>

#include "rvkit/json_io.hpp"
#include "rvkit/session.hpp"

namespace rvkit {

struct CorpusEntry {
  std::string name;
  std::string field;    // "Q" or a monic modulus in y
  std::string formula;  // one free VF variable X
  std::string note;
};

// one-variable decomposition corpus (covers every literal shape)
const std::vector<CorpusEntry>& builtin_corpus();
// section-term corpus for the complexity machinery
const std::vector<CorpusEntry>& builtin_section_corpus();

// run one decomposition entry to its JSON record
Json corpus_record(const CorpusEntry& e, const Budgets& budgets = {});

void corpus_save(const std::string& path, const Budgets& budgets = {});
Json corpus_load(const std::string& path);  // IOError on failure
// recompute and compare against a golden file; GoldenMismatch lists diffs
void corpus_check(const std::string& path, const Budgets& budgets = {});

}  // namespace rvkit
