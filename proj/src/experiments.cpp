#include "dclab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dclab/chaoscore.hpp"
#include "dclab/combdendrite.hpp"
#include "dclab/gehman.hpp"
#include "dclab/io.hpp"
#include "dclab/shiftspace.hpp"

#include "../vendor/json.hpp"

namespace dclab::labcli {

namespace {

using nlohmann::json;

void usage_check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

json rationals_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const Rational& r : v) a.push_back(rat_str(r));
  return a;
}

std::vector<Rational> rationals_from_json(const json& a) {
  std::vector<Rational> v;
  for (const auto& s : a) v.push_back(parse_rational(s.get<std::string>()));
  return v;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["levels"] = c.levels;
  j["deltas"] = rationals_to_json(c.deltas);
  j["grid"] = c.grid;
  j["growth"] = c.growth;
  json terms = json::array();
  for (const Int& t : c.growth_terms) terms.push_back(t.str());
  j["growth_terms"] = terms;
  j["prefix_blocks"] = c.prefix_blocks;
  j["alphabet"] = c.alphabet;
  j["depth"] = c.depth;
  j["forbidden"] = c.forbidden;
  j["tol"] = rat_str(c.tol);
  j["out"] = c.out;
  j["x1_values"] = rationals_to_json(c.x1_values);
  j["word_a"] = c.word_a;
  j["word_b"] = c.word_b;
  j["comb_bases"] = c.comb_bases;
  j["expect"] = c.expect;
  return j;
}

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "experiment", "levels",   "deltas", "grid",      "growth", "growth_terms",
      "prefix_blocks", "alphabet", "depth", "forbidden", "tol",  "out",
      "x1_values",  "word_a",   "word_b", "comb_bases", "expect"};
  return keys;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

shiftspace::Growth growth_from_config(const ExperimentConfig& c) {
  if (c.growth == "pow2sq") return shiftspace::Growth::pow2sq();
  if (c.growth == "factorial") return shiftspace::Growth::factorial();
  usage_check(c.growth == "custom", "unknown growth kind: " + c.growth);
  usage_check(!c.growth_terms.empty(), "custom growth needs growth_terms");
  return shiftspace::Growth::custom(c.growth_terms);
}

struct ExperimentOutput {
  std::map<std::string, std::string> results;
  // name -> content, written by the caller under the output directory
  std::vector<std::pair<std::string, std::string>> files;
  bool pass = false;
};

// ---------------------------------------------------------------------------
// lemma34

ExperimentOutput run_lemma34(const ExperimentConfig& c) {
  usage_check(c.levels >= 2 && c.levels % 2 == 0, "lemma34 needs a positive even level count");
  std::vector<Rational> deltas =
      c.deltas.empty() ? std::vector<Rational>{Rational(1, 4), Rational(1, 2)} : c.deltas;
  for (const Rational& d : deltas)
    usage_check(d > 0 && d <= Rational(1, 2), "lemma34 deltas must lie in (0, 1/2]");

  combdendrite::Lemma34Certificate cert = combdendrite::lemma34_certificate(c.levels, deltas);

  ExperimentOutput out;
  out.pass = true;
  json summary;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    Rational star = combdendrite::phi_star_closed_form(1, deltas[i]).value;
    Rational floor = combdendrite::phi_floor_closed_form(deltas[i]);
    const Rational& upper = cert.upper_final[i];
    const Rational& lower = cert.lower_final[i];
    bool ok = rat_abs(upper - star) <= c.tol && rat_abs(lower - floor) <= c.tol;
    out.pass = out.pass && ok;
    std::string key = rat_str(deltas[i]);
    out.results["upper(" + key + ")"] = rat_str(upper);
    out.results["lower(" + key + ")"] = rat_str(lower);
    out.results["upper_limit(" + key + ")"] = rat_str(star);
    out.results["lower_limit(" + key + ")"] = rat_str(floor);
    json block;
    block["upper"] = rat_str(upper);
    block["lower"] = rat_str(lower);
    block["upper_limit"] = rat_str(star);
    block["lower_limit"] = rat_str(floor);
    summary["estimates"][key] = block;
    if (deltas[i] == Rational(1, 2)) {
      summary["phi_star_half"] = rat_str(upper);
      summary["phi_half"] = rat_str(lower);
    }
    if (deltas[i] == Rational(1, 4)) summary["phi_star_quarter"] = rat_str(upper);
  }
  out.results["pass"] = bool_str(out.pass);

  io::CsvWriter csv({"checkpoint_time", "delta", "fraction_below"});
  for (const combdendrite::CertRow& row : cert.rows)
    csv.add_row({std::to_string(row.time), rat_str(row.delta), rat_str(row.fraction)});
  out.files.emplace_back("lemma34.csv", csv.str());
  out.files.emplace_back("lemma34.json", summary.dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// dc2scan

ExperimentOutput run_dc2scan(const ExperimentConfig& c) {
  Rational delta = c.deltas.empty() ? Rational(1, 4) : c.deltas.front();
  usage_check(delta > 0 && delta <= Rational(1, 2), "dc2scan delta must lie in (0, 1/2]");
  usage_check(c.grid >= 2, "dc2scan needs a grid of at least 2");

  combdendrite::Dc2ScanResult scan = combdendrite::dc2_absence_scan(delta, c.grid);

  std::vector<Rational> anchors = c.x1_values;
  if (anchors.empty())
    anchors = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  int sample_levels = std::min(c.levels, 10);
  if (sample_levels % 2 != 0) ++sample_levels;

  std::vector<Rational> grid{Rational(1, 256), delta, Rational(1, 2)};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  chaoscore::Tolerances tol;
  tol.one_gap = c.tol;
  tol.zero_gap = c.tol;

  bool any_dc2 = false;
  json verdicts = json::array();
  for (const Rational& x1 : anchors) {
    std::vector<Rational> series = combdendrite::pair_distance_series(x1, sample_levels);
    chaoscore::DistanceSeries ds(series, 1);
    chaoscore::EmpiricalDF df = chaoscore::empirical_df_pair(ds, grid, tol);
    chaoscore::ChaosVerdict v = chaoscore::classify_pair(df, tol);
    any_dc2 = any_dc2 || v.dc2;
    json entry;
    entry["x1"] = rat_str(x1);
    entry["dc2"] = v.dc2;
    entry["dc3"] = v.dc3;
    verdicts.push_back(entry);
  }

  ExperimentOutput out;
  out.pass = scan.max_value <= 1 - c.tol && !any_dc2;
  out.results["max"] = rat_str(scan.max_value);
  std::string argmax;
  for (const Rational& x : scan.argmax) {
    if (!argmax.empty()) argmax += ' ';
    argmax += rat_str(x);
  }
  out.results["argmax"] = argmax;
  out.results["dc2_anywhere"] = bool_str(any_dc2);
  out.results["pass"] = bool_str(out.pass);

  io::CsvWriter csv({"x1", "phi_star"});
  for (int i = 0; i <= c.grid; ++i) {
    Rational x(i, c.grid);
    csv.add_row({rat_str(x), rat_str(combdendrite::phi_star_closed_form(x, delta).value)});
  }
  json summary;
  summary["delta"] = rat_str(delta);
  summary["max"] = rat_str(scan.max_value);
  json am = json::array();
  for (const Rational& x : scan.argmax) am.push_back(rat_str(x));
  summary["argmax"] = am;
  summary["verdicts"] = verdicts;
  out.files.emplace_back("dc2scan.csv", csv.str());
  out.files.emplace_back("dc2scan.json", summary.dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// dc2half

ExperimentOutput run_dc2half(const ExperimentConfig& c) {
  std::vector<Rational> anchors = c.x1_values;
  if (anchors.empty()) anchors = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
  std::vector<Rational> deltas = c.deltas;
  if (deltas.empty())
    for (int m = 2; m <= 20; ++m)
      deltas.emplace_back(Int(1), pow_int(2, static_cast<std::uint64_t>(m)));
  for (const Rational& d : deltas)
    usage_check(d > 0 && d <= Rational(1, 2), "dc2half deltas must lie in (0, 1/2]");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    usage_check(deltas[i] < deltas[i - 1], "dc2half deltas must strictly decrease");

  ExperimentOutput out;
  out.pass = true;
  io::CsvWriter csv({"x1", "delta", "phi_star"});
  std::vector<Rational> column_zero, column_one;
  for (const Rational& x1 : anchors) {
    auto scan = combdendrite::dc2half_limit_scan(x1, deltas);
    bool decreasing = true;
    for (std::size_t i = 1; i < scan.size(); ++i)
      decreasing = decreasing && scan[i].second < scan[i - 1].second;
    bool vanishing = scan.back().second < c.tol;
    out.pass = out.pass && decreasing && vanishing;
    out.results["final(" + rat_str(x1) + ")"] = rat_str(scan.back().second);
    out.results["decreasing(" + rat_str(x1) + ")"] = bool_str(decreasing);
    for (const auto& [d, v] : scan) {
      csv.add_row({rat_str(x1), rat_str(d), rat_str(v)});
      if (x1 == 0) column_zero.push_back(v);
      if (x1 == 1) column_one.push_back(v);
    }
  }
  if (!column_zero.empty() && column_zero.size() == column_one.size()) {
    bool same = column_zero == column_one;
    out.results["edges_match"] = bool_str(same);
    out.pass = out.pass && same;
  }
  out.results["pass"] = bool_str(out.pass);
  out.files.emplace_back("dc2half.csv", csv.str());
  return out;
}

// ---------------------------------------------------------------------------
// dc1set

ExperimentOutput run_dc1set(const ExperimentConfig& c) {
  shiftspace::Growth growth = growth_from_config(c);
  shiftspace::GrowthReport report = shiftspace::validate_growth(growth);
  usage_check(report.pass, "growth sequence fails the spacing validation: " + report.detail);
  usage_check(c.prefix_blocks >= 2, "need at least two blocks");

  std::vector<Rational> grid =
      c.deltas.empty() ? std::vector<Rational>{Rational(1, 256), Rational(1, 2)} : c.deltas;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  chaoscore::Tolerances tol;
  tol.one_gap = c.tol;
  tol.zero_gap = c.tol;

  std::vector<shiftspace::Word> seed_words{"0", "1", "01", "11"};
  std::vector<shiftspace::SymbolicPoint> seeds;
  for (const auto& w : seed_words)
    seeds.push_back(shiftspace::SymbolicPoint::explicit_word(2, w));

  ExperimentOutput out;
  out.pass = true;
  io::CsvWriter csv({"seed_a", "seed_b", "blocks", "delta", "lower", "upper", "ly", "dc1",
                     "dc2", "dc2half", "dc3"});
  bool first_pair = true;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      int diff = -1;
      for (int k = 0; k < 8 && diff < 0; ++k)
        if (seeds[i].symbol(k) != seeds[j].symbol(k)) diff = k;
      usage_check(diff >= 0, "seed pair does not differ");
      // Deep enough to see the first differing coordinate twice, with the
      // zero block between its occurrences.
      std::size_t blocks = static_cast<std::size_t>((diff + 2) * (diff + 3) / 2 + diff + 1);
      blocks = std::max(blocks, static_cast<std::size_t>(c.prefix_blocks));

      auto xa = shiftspace::scrambled_point(seeds[i], growth);
      auto xb = shiftspace::scrambled_point(seeds[j], growth);
      shiftspace::ScrambledPair pair(xa, xb, blocks);
      chaoscore::EmpiricalDF df = pair.df(grid);
      chaoscore::ChaosVerdict v = chaoscore::classify_pair(df, tol);
      out.pass = out.pass && v.dc1;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        csv.add_row({seed_words[i], seed_words[j], std::to_string(blocks), rat_str(grid[g]),
                     rat_str(df.lower_est[g]), rat_str(df.upper_est[g]), bool_str(v.ly),
                     bool_str(v.dc1), bool_str(v.dc2), bool_str(v.dc2half), bool_str(v.dc3)});
      }
      out.results[seed_words[i] + "|" + seed_words[j]] = v.dc1 ? "dc1" : "not-dc1";
      if (first_pair) {
        out.files.emplace_back("df.svg", io::df_svg(df));
        Int cap = pair.horizon() < 530 ? pair.horizon() : Int(530);
        std::int64_t n = cap.convert_to<std::int64_t>();
        out.files.emplace_back("scrambled_prefix.txt",
                               shiftspace::SymbolicPoint::lambda_nu(seeds[i], growth).prefix(n) +
                                   "\n");
        first_pair = false;
      }
    }
  }
  out.results["pass"] = bool_str(out.pass);
  out.files.emplace_back("dc1set.csv", csv.str());
  return out;
}

// ---------------------------------------------------------------------------
// horseshoe

ExperimentOutput run_horseshoe(const ExperimentConfig& c) {
  shiftspace::Subshift shift(c.alphabet, c.forbidden);
  bool result = shiftspace::horseshoe_check(shift, c.word_a, c.word_b, c.depth);

  ExperimentOutput out;
  out.pass = result == c.expect;
  out.results["covering"] = bool_str(result);
  out.results["expected"] = bool_str(c.expect);
  out.results["pass"] = bool_str(out.pass);
  json j;
  j["alphabet_size"] = c.alphabet;
  j["forbidden_words"] = c.forbidden;
  j["word_a"] = c.word_a;
  j["word_b"] = c.word_b;
  j["depth"] = c.depth;
  j["covering"] = result;
  out.files.emplace_back("horseshoe.json", j.dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// gehman

ExperimentOutput run_gehman(const ExperimentConfig& c) {
  usage_check(c.depth >= 2, "gehman depth must be at least 2");
  double nodes_bound = 1;
  for (int i = 0; i < c.depth; ++i) {
    nodes_bound *= c.alphabet;
    usage_check(nodes_bound <= 600000, "gehman tree too large; lower depth or alphabet");
  }
  shiftspace::Subshift shift(c.alphabet, c.forbidden);
  gehman::GehmanDendrite d = gehman::subdendrite(shift, c.depth);
  bool conj = gehman::endpoint_conjugacy_check(shift, c.depth);

  ExperimentOutput out;
  out.pass = conj;
  out.results["nodes"] = std::to_string(d.nodes().size());
  out.results["endpoints"] = std::to_string(shift.language(c.depth).size());
  out.results["root_degree"] = std::to_string(d.branch_degree(shiftspace::Word()));
  out.results["conjugacy"] = bool_str(conj);
  out.results["pass"] = bool_str(out.pass);
  out.files.emplace_back("gehman.json", d.to_json_text() + "\n");
  if (d.nodes().size() <= 5000) out.files.emplace_back("gehman.svg", io::gehman_svg(d));
  return out;
}

// ---------------------------------------------------------------------------
// generalized-comb

ExperimentOutput run_generalized_comb(const ExperimentConfig& c) {
  combdendrite::CombParams params;
  if (!c.comb_bases.empty()) params.bases = c.comb_bases;
  params.validate();

  int levels = std::min(c.levels, 12);
  if (levels < 2) levels = 2;
  Int total = params.cumulative_teeth(levels);
  std::int64_t steps =
      total > 20001 ? 20000 : total.convert_to<std::int64_t>() - 1;

  // Symbolic itinerary against the exact-rational orbit of the first top.
  combdendrite::DendritePoint p = combdendrite::DendritePoint::spike_top(1, 1, params);
  combdendrite::LevelWalkState s;
  bool agree = true;
  io::CsvWriter csv({"k", "x_num", "x_den", "y_num", "y_den", "level", "index"});
  for (std::int64_t k = 0; k <= steps; ++k) {
    if (p.on_spine() || p.level() != s.level || p.index() != s.index) {
      agree = false;
      break;
    }
    if (k < 2000)
      csv.add_row({std::to_string(k), numerator(p.x()).str(), denominator(p.x()).str(),
                   numerator(p.y()).str(), denominator(p.y()).str(),
                   std::to_string(p.level()), p.index().str()});
    if (k < steps) {
      p = combdendrite::apply_f(p, params);
      s = combdendrite::walk_successor(s, params);
    }
  }

  // Lower/upper part boundary continuity on the smaller levels.
  bool continuous = true;
  int check_levels = std::min(levels, 4);
  for (int n = 1; n <= check_levels && continuous; ++n) {
    combdendrite::SpikeGrid grid = combdendrite::spike_grid(n, params);
    int b = params.base_at(n);
    Rational tau = Rational(Int(b - 1), params.denominator(n) * b);
    for (const Int& j : grid.indices) {
      combdendrite::LevelWalkState here{n, j, 0};
      combdendrite::LevelWalkState succ = combdendrite::walk_successor(here, params);
      Rational target(succ.index, params.denominator(succ.level));
      if (combdendrite::psi_eval(n, j, tau, params) != target) {
        continuous = false;
        break;
      }
    }
  }

  ExperimentOutput out;
  out.pass = agree && continuous;
  out.results["steps_checked"] = std::to_string(steps);
  out.results["itinerary_agrees"] = bool_str(agree);
  out.results["boundary_continuous"] = bool_str(continuous);
  out.results["pass"] = bool_str(out.pass);
  out.files.emplace_back("orbit.csv", csv.str());
  out.files.emplace_back("comb.svg", io::comb_svg(std::min(levels, 4), params));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config plumbing

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j = json::parse(text);
  usage_check(j.is_object(), "config must be a JSON object");
  for (const auto& item : j.items())
    usage_check(known_config_keys().count(item.key()) > 0,
                "unknown config key: " + item.key());
  ExperimentConfig c;
  if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
  if (j.contains("levels")) c.levels = j["levels"].get<int>();
  if (j.contains("deltas")) c.deltas = rationals_from_json(j["deltas"]);
  if (j.contains("grid")) c.grid = j["grid"].get<int>();
  if (j.contains("growth")) c.growth = j["growth"].get<std::string>();
  if (j.contains("growth_terms"))
    for (const auto& t : j["growth_terms"]) c.growth_terms.emplace_back(t.get<std::string>());
  if (j.contains("prefix_blocks")) c.prefix_blocks = j["prefix_blocks"].get<int>();
  if (j.contains("alphabet")) c.alphabet = j["alphabet"].get<int>();
  if (j.contains("depth")) c.depth = j["depth"].get<int>();
  if (j.contains("forbidden"))
    c.forbidden = j["forbidden"].get<std::vector<std::string>>();
  if (j.contains("tol")) c.tol = parse_rational(j["tol"].get<std::string>());
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("x1_values")) c.x1_values = rationals_from_json(j["x1_values"]);
  if (j.contains("word_a")) c.word_a = j["word_a"].get<std::string>();
  if (j.contains("word_b")) c.word_b = j["word_b"].get<std::string>();
  if (j.contains("comb_bases")) c.comb_bases = j["comb_bases"].get<std::vector<int>>();
  if (j.contains("expect")) c.expect = j["expect"].get<bool>();
  return c;
}

std::string ExperimentConfig::to_json_text() const { return config_to_json(*this).dump(2); }

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.experiment == b.experiment && a.levels == b.levels && a.deltas == b.deltas &&
         a.grid == b.grid && a.growth == b.growth && a.growth_terms == b.growth_terms &&
         a.prefix_blocks == b.prefix_blocks && a.alphabet == b.alphabet &&
         a.depth == b.depth && a.forbidden == b.forbidden && a.tol == b.tol &&
         a.out == b.out && a.x1_values == b.x1_values && a.word_a == b.word_a &&
         a.word_b == b.word_b && a.comb_bases == b.comb_bases && a.expect == b.expect;
}

std::string RunReport::to_json_text() const {
  json j;
  j["config"] = config_to_json(config);
  j["results"] = results;
  j["artifacts"] = artifacts;
  j["pass"] = pass;
  return j.dump(2);
}

std::string resolve_out_dir(const std::string& configured) {
  const char* env = std::getenv("DCLAB_OUT");
  if (env != nullptr && *env != '\0') return env;
  return configured;
}

RunReport run(const ExperimentConfig& config) {
  auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  if (config.experiment == "lemma34")
    out = run_lemma34(config);
  else if (config.experiment == "dc2scan")
    out = run_dc2scan(config);
  else if (config.experiment == "dc2half")
    out = run_dc2half(config);
  else if (config.experiment == "dc1set")
    out = run_dc1set(config);
  else if (config.experiment == "horseshoe")
    out = run_horseshoe(config);
  else if (config.experiment == "gehman")
    out = run_gehman(config);
  else if (config.experiment == "generalized-comb")
    out = run_generalized_comb(config);
  else
    throw std::invalid_argument("unknown experiment: " + config.experiment);

  RunReport report;
  report.config = config;
  report.results = std::move(out.results);
  report.pass = out.pass;

  std::string dir = resolve_out_dir(config.out);
  io::ensure_dir(dir);
  for (const auto& [name, content] : out.files) {
    io::write_text(dir + "/" + name, content);
    report.artifacts.push_back(name);
  }
  io::write_text(dir + "/report.json", report.to_json_text() + "\n");

  auto end = std::chrono::steady_clock::now();
  report.duration_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
  return report;
}

}  // namespace dclab::labcli
