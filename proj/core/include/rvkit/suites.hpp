#pragma once

#include <string>
#include <vector>

#include "rvkit/json_io.hpp"
#include "rvkit/session.hpp"

namespace rvkit {

struct SuiteResult {
  std::string name;
  bool pass = false;
  int total = 0;
  int failed = 0;
  Json details;
  double elapsed_ms = 0.0;
};

// the acceptance suites, one per criterion
SuiteResult suite_newton(const SessionConfig& cfg);       // slope-length oracle
SuiteResult suite_lift(const SessionConfig& cfg);         // root lifting
SuiteResult suite_cmin(const SessionConfig& cfg);         // decomposition vs probes
SuiteResult suite_pullback(const SessionConfig& cfg);     // deformed RV-pullbacks
SuiteResult suite_rvsplit(const SessionConfig& cfg);      // centered-set splitting
SuiteResult suite_bmin(const SessionConfig& cfg);         // b1/b3 witnesses
SuiteResult suite_contrast(const SessionConfig& cfg);     // the two section theories
SuiteResult suite_volpart(const SessionConfig& cfg);      // volumetric partitions
SuiteResult suite_lower(const SessionConfig& cfg);        // complexity lowering

std::vector<SuiteResult> run_suites(const SessionConfig& cfg,
                                    const std::vector<std::string>& names);
std::vector<std::string> all_suite_names();

// deterministic JSON of the results; timing excluded so repeated runs are
// byte-identical
Json suites_to_json(const std::vector<SuiteResult>& results);

}  // namespace rvkit
