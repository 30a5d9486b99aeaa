#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dclab/chaoscore.hpp"
#include "dclab/rational.hpp"

namespace dclab::shiftspace {

// Finite words over alphabets of size <= 10, one digit character per symbol.
using Word = std::string;

int symbol_value(char c);
char symbol_char(int v);

// Strictly increasing block-length sequences a_1 < a_2 < ...; partial sums
// b_n = a_1 + ... + a_n.  The built-in families grow fast enough for the
// spacing condition (b_n + n)/a_{n+1} -> 0; custom lists may not.
class Growth {
 public:
  enum class Kind { pow2sq, factorial, custom };

  static Growth pow2sq();     // a_i = 2^(i*i)
  static Growth factorial();  // a_i = (i!)^(i!)
  static Growth custom(std::vector<Int> terms);

  Kind kind() const { return kind_; }
  std::string name() const;
  // 1-based; throws past the end of a custom list.
  Int term(std::size_t i) const;
  Int partial_sum(std::size_t n) const;  // b_n, with b_0 = 0
  std::size_t max_terms() const;
  bool validated() const { return *validated_; }

 private:
  friend struct GrowthValidationAccess;
  Kind kind_;
  std::vector<Int> custom_terms_;
  // Memoized terms/partial sums; shared so copies stay cheap.
  std::shared_ptr<std::vector<Int>> terms_;
  std::shared_ptr<std::vector<Int>> sums_;
  std::shared_ptr<bool> validated_;
  explicit Growth(Kind kind, std::vector<Int> custom = {});
  void ensure(std::size_t n) const;
};

struct GrowthReport {
  bool pass = false;
  std::vector<Rational> ratios;  // (b_n + n)/a_{n+1} for n = 1..depth
  std::string detail;
};

// Checks the spacing condition at finite depth: ratios strictly decreasing
// over the last half of the range and the final ratio below the threshold.
// A pass marks the sequence as validated for use in scrambled points.
GrowthReport validate_growth(const Growth& growth, int depth = 6,
                             const Rational& threshold = Rational(1, 20));

class ScrambledCore;

// A one-sided sequence over {0..k-1} with cheap symbol queries.  Shifting
// adjusts a read offset, so sigma is O(1) and pure.
class SymbolicPoint {
 public:
  static SymbolicPoint explicit_word(int k, Word prefix);  // zero-padded
  static SymbolicPoint eventually_periodic(int k, Word preperiod, Word period);
  // nu(lambda(seed)) for a binary seed; growth must be validated.
  static SymbolicPoint lambda_nu(const SymbolicPoint& seed, const Growth& growth);

  int alphabet_size() const { return alphabet_; }
  int symbol(std::int64_t index) const;
  Word prefix(std::int64_t length) const;
  std::int64_t offset() const { return offset_; }
  const std::shared_ptr<const ScrambledCore>& scrambled_core() const { return core_; }

 private:
  friend SymbolicPoint sigma(const SymbolicPoint&);
  int alphabet_ = 2;
  std::int64_t offset_ = 0;
  // Exactly one of these backs the point.
  Word explicit_{};
  Word preperiod_{}, period_{};
  std::shared_ptr<const ScrambledCore> core_{};
  enum class Rule { explicit_word, eventually_periodic, lambda_nu } rule_ = Rule::explicit_word;
  SymbolicPoint() = default;
};

SymbolicPoint sigma(const SymbolicPoint& x);

// 2^-i with i the first disagreement index below the horizon; 0 if none.
Rational shift_metric(const SymbolicPoint& x, const SymbolicPoint& y,
                      std::int64_t horizon);

// Prefix-repetition spreading: x0 x0x1 x0x1x2 ...
Word lambda_map(const SymbolicPoint& x, std::int64_t out_len);

// Block dilution: zero block, then coordinate blocks interleaved with zero
// blocks at triangular positions; block i has length a_i.  Coordinate blocks
// carry x0, x1, x2, ... in order.  Requires a structurally valid growth.
Word nu_map(const SymbolicPoint& x, const Growth& growth, std::int64_t out_len);

struct Block {
  Int start;   // index of the block's first coordinate
  Int length;  // a_i
  int coord;   // index of the seed coordinate replicated here, -1 for a zero block
};

// nu(lambda(seed)) held as a block table; symbol queries and pairwise
// distance work at any depth without materializing the sequence.
class ScrambledCore {
 public:
  ScrambledCore(SymbolicPoint seed, Growth growth);
  const SymbolicPoint& seed() const { return seed_; }
  const Growth& growth() const { return growth_; }
  Block block(std::size_t i) const;  // 1-based block index
  int symbol(const Int& index) const;
  // Smallest i with b_i > index (the block containing the coordinate).
  std::size_t block_containing(const Int& index) const;

 private:
  SymbolicPoint seed_;
  Growth growth_;
  mutable std::vector<Block> blocks_;
  void ensure_block(std::size_t i) const;
};

using ScrambledPoint = std::shared_ptr<const ScrambledCore>;

// Errors unless validate_growth has passed on this growth object.
ScrambledPoint scrambled_point(const SymbolicPoint& seed, const Growth& growth);

// Pairwise finite-time analysis of two scrambled points over the first
// `blocks` blocks, via exact interval arithmetic on the disagreement set.
class ScrambledPair {
 public:
  ScrambledPair(const ScrambledPoint& x, const ScrambledPoint& y, std::size_t blocks);

  const std::vector<std::pair<Int, Int>>& disagreements() const { return intervals_; }
  Int horizon() const { return horizon_; }

  // d(sigma^k x, sigma^k y) for k below the horizon, honestly truncated:
  // a clean run past the horizon counts as distance 0.  Distances below
  // 2^-1024 saturate there so far-apart disagreements stay representable.
  Rational distance_at(const Int& k) const;

  // F_n(delta) for delta with exponent m: the fraction of k in [0, n] whose
  // window [k, k+m] avoids every disagreement, clamped at 1.  Exact; n must
  // not exceed the horizon (window indices past it count as clean).
  Rational fraction_below(const Int& n, int m) const;

  // Natural sampling times: ends of blocks, and zero-block ends pulled back
  // by each delta exponent (where the upper DF peaks).
  std::vector<Int> checkpoint_times(const std::vector<int>& exponents) const;

  chaoscore::EmpiricalDF df(const std::vector<Rational>& delta_grid) const;

 private:
  std::vector<std::pair<Int, Int>> intervals_;  // disjoint, sorted [s, e)
  std::vector<Int> block_ends_;                 // b_1 .. b_blocks
  std::vector<Int> zero_block_ends_;            // ends of zero blocks only
  Int horizon_;
  Int count_clean(const Int& n, int m) const;
};

using MembershipHook = std::function<bool(const Word&)>;

// Finite-type constraints (forbidden factors) plus an optional extra
// word predicate for subshifts that are not of finite type.  The hook must
// accept a factor-closed set: language enumeration applies it to every
// prefix of a candidate word.  Hooks are not serialized.
class Subshift {
 public:
  Subshift(int alphabet_size, std::vector<Word> forbidden, MembershipHook hook = {});
  static Subshift full_shift(int k);
  static Subshift golden_mean();  // binary, forbidden "11"
  static Subshift from_json_text(const std::string& text);
  std::string to_json_text() const;

  int alphabet_size() const { return alphabet_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }
  bool admissible(const Word& w) const;
  // All admissible words of the given length, lexicographic.
  std::vector<Word> language(int length) const;
  // True iff every admissible word of length < depth extends on the right.
  bool extendable(int depth) const;

 private:
  int alphabet_;
  std::vector<Word> forbidden_;
  MembershipHook hook_;
  std::size_t max_forbidden_len_ = 0;
};

// Finite-depth certificate that the shift image of each base cylinder
// covers both: every admissible depth-word u starting with word_a or word_b
// must, for each base word w, start with w dropped of its first letter and
// extend leftward to an admissible word w[0]u.  Base words must be
// admissible and neither may be a prefix of the other.
bool horseshoe_check(const Subshift& shift, const Word& word_a, const Word& word_b,
                     int depth = 8);

}  // namespace dclab::shiftspace
