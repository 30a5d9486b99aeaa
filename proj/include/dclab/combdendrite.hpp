#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dclab/rational.hpp"

namespace dclab::combdendrite {

// Subdivision bases per level.  Level n uses bases[n-1], repeating the last
// entry for deeper levels; the classical comb is the default base 3
// everywhere.  Level-n teeth sit at j/B_n for j not divisible by the level
// base, where B_n is the product of the first n bases, and have height 1/B_n.
struct CombParams {
  std::vector<int> bases{3};
  void validate() const;
  int base_at(int level) const;
  Int denominator(int level) const;    // B_n
  Rational height(int level) const;    // 1/B_n
  Int level_population(int level) const;   // teeth in level n
  Int cumulative_teeth(int level) const;   // l_n, teeth in levels 1..n
};

struct SpikeGrid {
  int level = 0;
  Int denominator;      // B_n
  Rational height;      // 1/B_n
  std::vector<Int> indices;  // admissible j, ascending
};

SpikeGrid spike_grid(int level, const CombParams& params = {});

// A point of the comb: either on the spine segment [0,1] x {0} or on the
// tooth at j/B_n with 0 < y <= 1/B_n.  Height zero canonicalizes to spine.
class DendritePoint {
 public:
  static DendritePoint spine(const Rational& x);
  static DendritePoint spike(int level, const Int& index, const Rational& y,
                             const CombParams& params = {});
  static DendritePoint spike_top(int level, const Int& index,
                                 const CombParams& params = {});

  bool on_spine() const { return level_ == 0; }
  int level() const { return level_; }
  const Int& index() const { return index_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  friend bool operator==(const DendritePoint& a, const DendritePoint& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const DendritePoint& a, const DendritePoint& b) {
    return !(a == b);
  }

 private:
  int level_ = 0;  // 0 on the spine
  Int index_ = 0;
  Rational x_{0}, y_{0};
};

// Sup metric of the plane restricted to the comb.
Rational distance(const DendritePoint& a, const DendritePoint& b);

// One traversal step of the tooth-top itinerary.  Odd levels sweep indices
// upward, even levels downward; the last tooth of a level hands off to the
// matching end of the next level.  elapsed counts steps from (1, 1).
struct LevelWalkState {
  int level = 1;
  Int index = 1;
  std::int64_t elapsed = 0;
};

LevelWalkState walk_successor(const LevelWalkState& s, const CombParams& params = {});
std::int64_t walk_time_of(int level, const Int& index, const CombParams& params = {});
LevelWalkState walk_state_at(std::int64_t time, const CombParams& params = {});

// Base-of-tooth slide: the lower part of tooth (n, j) maps onto the spine
// segment from j/B_n to the next tooth position of the itinerary.
Rational psi_eval(int level, const Int& index, const Rational& y,
                  const CombParams& params = {});
// Upper-part height transfer onto the successor tooth.
Rational phi_eval(int level, const Int& index, const Rational& y,
                  const CombParams& params = {});

DendritePoint apply_f(const DendritePoint& p, const CombParams& params = {});
std::vector<DendritePoint> orbit(const DendritePoint& p, int steps,
                                 const CombParams& params = {});

// Steps until the orbit lands on the spine (where it stays), or nullopt if
// that does not happen within the cap.  Tooth tops never settle.
std::optional<std::int64_t> eventually_fixed_time(const DendritePoint& p,
                                                  std::int64_t cap,
                                                  const CombParams& params = {});

// Limit of the peak visit frequencies for the pair (tooth-top itinerary,
// spine anchor x1): the largest limsup fraction of time the itinerary spends
// within delta of the anchor.  Valid for 0 < delta <= 1/2.
struct ClosedFormDF {
  Rational near_span;   // spine length within delta of the anchor
  Rational right_span;  // anchor-to-far-end span entering the denominator
  Rational value;
};

ClosedFormDF phi_star_closed_form(const Rational& x1, const Rational& delta);

// Matching trough limit for the anchor fixed at 1: the itinerary re-enters
// the delta-neighborhood once per level sweep, giving delta/(3 - 2 delta).
// Valid for 0 < delta <= 1/2.
Rational phi_floor_closed_form(const Rational& delta);

// Scan anchors for the largest peak frequency at a fixed delta.  The scan
// covers i/grid_size plus the exact maximizers delta and 1 - delta; a
// maximum strictly below 1 rules out a dense-visit anchor at this delta.
struct Dc2ScanResult {
  Rational delta;
  Rational max_value;
  std::vector<Rational> argmax;
};

Dc2ScanResult dc2_absence_scan(const Rational& delta, int grid_size);

// Peak frequency at one anchor across a delta grid; increasing in delta with
// limit 0 as delta -> 0, which separates the small-delta regimes downstream.
std::vector<std::pair<Rational, Rational>> dc2half_limit_scan(
    const Rational& x1, const std::vector<Rational>& deltas);

// Stage-windowed visit-frequency estimates for the pair (tooth-top
// itinerary, spine anchor fixed at 1).  Stage K spans itinerary times
// [l_{2K-2}, l_{2K}), one odd and one even level, and records the extreme
// running fractions over that window.
struct StageEstimate {
  int stage = 0;
  std::int64_t window_begin = 0;
  std::int64_t window_end = 0;
  Rational lower, upper;
  std::int64_t lower_at = 0, upper_at = 0;
};

struct CertRow {
  std::int64_t time = 0;
  Rational delta;
  Rational fraction;
};

struct Lemma34Certificate {
  std::vector<Rational> deltas;
  std::vector<std::vector<StageEstimate>> stages;  // [delta][stage]
  std::vector<CertRow> rows;                       // extremes plus mid-level samples
  std::vector<Rational> lower_final, upper_final;  // last stage, per delta
};

Lemma34Certificate lemma34_certificate(int levels,
                                       const std::vector<Rational>& deltas = {
                                           Rational(1, 4), Rational(1, 2)});

// d(f^k p, q) for k = 0 .. l_levels - 1 with p the first tooth top and
// q = spine(x1); feeds the generic distribution estimator.
std::vector<Rational> pair_distance_series(const Rational& x1, int levels,
                                           const CombParams& params = {});

// A time T such that two tooth tops launched at the given states stay within
// delta of each other from T on (they share the itinerary, offset in time).
std::int64_t endpoint_convergence_witness(const LevelWalkState& a,
                                          const LevelWalkState& b,
                                          const Rational& delta,
                                          const CombParams& params = {});

}  // namespace dclab::combdendrite
