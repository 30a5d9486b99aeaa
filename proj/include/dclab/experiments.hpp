#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dclab/rational.hpp"

namespace dclab::labcli {

// One fully-specified run.  Every field always serializes, so the JSON echo
// of a config is canonical and two equal configs print identically.
struct ExperimentConfig {
  std::string experiment;  // lemma34 | dc2scan | dc2half | dc1set |
                           // horseshoe | gehman | generalized-comb
  int levels = 12;
  std::vector<Rational> deltas;  // empty means the experiment default
  int grid = 1024;
  std::string growth = "pow2sq";  // pow2sq | factorial | custom
  std::vector<Int> growth_terms;  // custom growth only
  int prefix_blocks = 4;
  int alphabet = 2;
  int depth = 8;
  std::vector<std::string> forbidden;
  Rational tol{1, 20};
  std::string out = "out";
  // Config-file-only knobs (no dedicated CLI flags).
  std::vector<Rational> x1_values;
  std::string word_a = "0";
  std::string word_b = "1";
  std::vector<int> comb_bases;
  bool expect = true;  // expected horseshoe outcome

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

struct RunReport {
  ExperimentConfig config;
  std::map<std::string, std::string> results;
  std::vector<std::string> artifacts;  // paths of written files
  bool pass = false;
  std::int64_t duration_ms = 0;  // printed, never serialized

  // Canonical JSON; excludes the duration so equal configs give
  // byte-identical reports.
  std::string to_json_text() const;
};

// Runs the experiment, writes its artifacts under the configured output
// directory, and returns the summary.  Throws std::invalid_argument for
// configs that fail validation.
RunReport run(const ExperimentConfig& config);

// DCLAB_OUT wins over the configured directory when set and nonempty.
std::string resolve_out_dir(const std::string& configured);

}  // namespace dclab::labcli
