#pragma once

#include <string>
#include <vector>

#include "dclab/chaoscore.hpp"
#include "dclab/combdendrite.hpp"
#include "dclab/gehman.hpp"
#include "dclab/rational.hpp"

namespace dclab::io {

// Decimal rendering with a fixed digit count, round half away from zero.
// Keeps every emitted number locale-free and bit-stable across runs.
std::string fixed_decimal(const Rational& r, int digits);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string body_;
};

void ensure_dir(const std::string& path);
void write_text(const std::string& path, const std::string& content);

// Spine plus teeth for the first few levels; keep levels small, the tooth
// count grows geometrically.
std::string comb_svg(int levels, const combdendrite::CombParams& params = {});

// Tree skeleton with branch points laid out by their word labels.
std::string gehman_svg(const gehman::GehmanDendrite& d);

// Step plot of the lower and upper estimates across the delta grid.
std::string df_svg(const chaoscore::EmpiricalDF& df);

}  // namespace dclab::io
