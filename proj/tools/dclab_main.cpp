#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dclab/experiments.hpp"
#include "dclab/rational.hpp"

#include "../vendor/CLI11.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One integer per line, blank lines and '#' comments skipped.
std::vector<dclab::Int> read_growth_terms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open growth file " + path);
  std::vector<dclab::Int> terms;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    terms.emplace_back(line.substr(a, b - a + 1));
  }
  return terms;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributional-chaos lab"};
  app.require_subcommand(0);

  std::string experiment;
  app.add_option("experiment", experiment,
                 "one of: lemma34 dc2scan dc2half dc1set horseshoe gehman generalized-comb")
      ->required();

  std::string config_path;
  int levels = 0, grid = 0, prefix_blocks = 0, alphabet = 0, depth = 0;
  std::vector<std::string> delta_args;
  std::string growth_arg, forbidden_arg, tol_arg, out_arg;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--levels", levels, "comb levels to simulate");
  app.add_option("--delta", delta_args, "closeness threshold, rational p/q (repeatable)");
  app.add_option("--grid", grid, "scan resolution");
  app.add_option("--growth", growth_arg, "pow2sq | factorial | custom:<file>");
  app.add_option("--prefix-blocks", prefix_blocks, "blocks of the interleaved prefix to build");
  app.add_option("--alphabet", alphabet, "shift alphabet size");
  app.add_option("--depth", depth, "word length bound for shift computations");
  app.add_option("--forbidden", forbidden_arg, "comma-separated forbidden words");
  app.add_option("--tol", tol_arg, "pass/fail tolerance, rational p/q");
  app.add_option("--out", out_arg, "output directory (DCLAB_OUT overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    dclab::labcli::ExperimentConfig config;
    if (!config_path.empty())
      config = dclab::labcli::ExperimentConfig::from_json_text(read_file(config_path));
    config.experiment = experiment;
    if (app.count("--levels") > 0) config.levels = levels;
    if (app.count("--grid") > 0) config.grid = grid;
    if (app.count("--prefix-blocks") > 0) config.prefix_blocks = prefix_blocks;
    if (app.count("--alphabet") > 0) config.alphabet = alphabet;
    if (app.count("--depth") > 0) config.depth = depth;
    if (app.count("--delta") > 0) {
      config.deltas.clear();
      for (const std::string& d : delta_args) config.deltas.push_back(dclab::parse_rational(d));
    }
    if (app.count("--growth") > 0) {
      if (growth_arg.rfind("custom:", 0) == 0) {
        config.growth = "custom";
        config.growth_terms = read_growth_terms(growth_arg.substr(7));
      } else {
        config.growth = growth_arg;
        config.growth_terms.clear();
      }
    }
    if (app.count("--forbidden") > 0) config.forbidden = split_commas(forbidden_arg);
    if (app.count("--tol") > 0) config.tol = dclab::parse_rational(tol_arg);
    if (app.count("--out") > 0) config.out = out_arg;

    dclab::labcli::RunReport report = dclab::labcli::run(config);
    for (const auto& [key, value] : report.results)
      std::cout << "  " << key << " = " << value << "\n";
    std::cout << report.config.experiment << ": " << (report.pass ? "PASS" : "FAIL") << " ("
              << report.duration_ms << " ms, artifacts in "
              << dclab::labcli::resolve_out_dir(report.config.out) << ")\n";
    return report.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
