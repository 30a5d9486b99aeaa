#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "dclab/rational.hpp"

namespace dclab::chaoscore {

// A finite run of orbit distances d(f^k x, f^k y), k = 0..N, exact and
// bounded by the space's diameter.
class DistanceSeries {
 public:
  DistanceSeries(std::vector<Rational> values, Rational diameter);

  // One value per line, "p/q" or decimal; blank lines and '#' comments are
  // skipped.  Throws on malformed input or an empty stream.
  static DistanceSeries from_csv(std::istream& in, Rational diameter);

  const std::vector<Rational>& values() const { return values_; }
  const Rational& diameter() const { return diameter_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

 private:
  std::vector<Rational> values_;
  Rational diameter_;
};

struct Tolerances {
  Rational one_gap{1, 20};        // slack below 1 for "upper DF is full"
  Rational zero_gap{1, 20};       // slack above 0 for "lower DF vanishes"
  Rational tail_fraction{1, 2};   // trailing portion treated as asymptotic
  void validate() const;          // throws std::invalid_argument
};

// Finite-time lower/upper distribution-function estimates on a delta grid.
// Estimates are inf/sup of F_n(delta) = min(1, (1/n)#{0 <= k <= n: d_k < delta})
// over the tail window [tail_start, N], or over checkpoint_times when given.
struct EmpiricalDF {
  std::vector<Rational> delta_grid;   // strictly increasing, in (0, diameter]
  std::vector<Rational> lower_est;    // per delta, within [0,1]
  std::vector<Rational> upper_est;    // per delta, lower_est <= upper_est
  std::vector<Int> checkpoint_times;  // empty in window mode
  Int tail_start{0};
  Rational diameter{1};
  // Distance extremes over the same window; back the Li-Yorke surrogate.
  Rational tail_min_distance{0};
  Rational tail_max_distance{0};
};

struct DfOptions {
  // Evaluate F_n only at these times (each >= 1) instead of the tail window.
  std::vector<std::int64_t> checkpoint_times;
  // Window mode: override the tail_fraction-derived window start.
  std::optional<std::int64_t> tail_start;
};

EmpiricalDF empirical_df_pair(const DistanceSeries& series,
                              std::vector<Rational> delta_grid,
                              const Tolerances& tol,
                              const DfOptions& options = {});

// Exactness regression for the complement identity: at every prefix length
// m = 1..n the independently computed counts #{d < delta} and #{d >= delta}
// sum to m, i.e. the two frequency fractions sum to exactly 1.
bool complement_identity_check(const DistanceSeries& series, const Rational& delta,
                               std::int64_t n);

struct ChaosVerdict {
  bool ly = false;
  Rational ly_liminf{0};  // min tail distance backing the proximality half
  Rational ly_limsup{0};  // max tail distance backing the separation half
  bool dc1 = false;
  bool dc2 = false;
  bool dc2half = false;
  bool dc3 = false;
  // Present iff dc3: leftmost longest grid run where upper - lower > tol.
  std::optional<std::pair<Rational, Rational>> dc3_interval;
  // Grid delta witnessing the lower-DF deficiency for dc1/dc2.
  std::optional<Rational> epsilon_witness;
  Rational tolerance{1, 20};
};

// Maps DF estimates to hierarchy-consistent flags.  The raw finite-time
// tests can disagree with the asymptotic implications at tolerance
// boundaries, so the stronger flags are conjoined with the weaker ones:
// dc2 requires its own test plus dc2half and dc3, dc1 requires dc2.
ChaosVerdict classify_pair(const EmpiricalDF& df, const Tolerances& tol);

}  // namespace dclab::chaoscore
