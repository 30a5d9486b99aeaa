#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dclab/rational.hpp"
#include "dclab/shiftspace.hpp"

namespace dclab::gehman {

using shiftspace::SymbolicPoint;
using shiftspace::Subshift;
using shiftspace::Word;

// Tree of branch nodes c_w, one per admissible word with |w| <= depth, with
// the edge into c_w of length 2^{-|w|}.  Endpoints stand for the infinite
// admissible sequences hanging below the tree; pairs of endpoints are
// measured with the shift metric, everything else with arc length.
class GehmanDendrite {
 public:
  GehmanDendrite(Subshift shift, int depth);

  const Subshift& shift() const { return shift_; }
  int depth() const { return depth_; }
  const std::vector<Word>& nodes() const { return nodes_; }  // sorted
  bool has_node(const Word& w) const;
  // Admissible one-letter extensions plus the parent edge (root has none).
  int branch_degree(const Word& w) const;
  Rational edge_length(const Word& w) const;  // edge into c_w; w nonempty
  Rational root_distance(const Word& w) const;  // 1 - 2^{-|w|}
  std::string to_json_text() const;

 private:
  Subshift shift_;
  int depth_;
  std::vector<Word> nodes_;
};

// Full tree over k letters.
GehmanDendrite build_gehman(int k, int depth);
// Tree restricted to the language of a subshift; errors when the language
// dies out before the requested depth.
GehmanDendrite subdendrite(const Subshift& shift, int depth);

struct GehmanPoint {
  enum class Kind { branch, endpoint, arc };
  Kind kind = Kind::branch;
  Word word;                        // branch and arc points
  std::optional<SymbolicPoint> end;  // endpoint payload
  Rational t{0};                    // arc parameter, 1 at c_word

  static GehmanPoint branch(Word w);
  static GehmanPoint endpoint(SymbolicPoint x);
  static GehmanPoint arc(Word w, Rational t);
};

// Letter-dropping self-map: c_w goes to c_{w[1:]}, the root stays fixed,
// first-level edges collapse into the root, endpoints shift.
GehmanPoint g_map(const GehmanPoint& p, const GehmanDendrite& d);

Rational arc_distance(const GehmanPoint& a, const GehmanPoint& b,
                      const GehmanDendrite& d);

// Finite-depth commuting-square check between the letter-dropping map and
// the shift, run over branch nodes, sampled arc points, and the periodic
// endpoints the language supports.
bool endpoint_conjugacy_check(const Subshift& shift, int depth);

}  // namespace dclab::gehman
