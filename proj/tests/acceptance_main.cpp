// Eight go/no-go checks, one line each, nonzero exit when any fails.
// Parameters and tolerances are pinned here on purpose: the numbers in this
// file are the contract, not knobs.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "dclab/chaoscore.hpp"
#include "dclab/combdendrite.hpp"
#include "dclab/gehman.hpp"
#include "dclab/rational.hpp"
#include "dclab/shiftspace.hpp"

using namespace dclab;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok) {
  std::cout << "criterion " << number << (ok ? ": PASS " : ": FAIL ") << "- " << what
            << "\n";
  if (!ok) ++failures;
}

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// minstd linear congruential generator; fixed seed keeps every run identical
struct Lcg {
  std::uint64_t state = 12345;
  std::uint64_t next() {
    state = (48271 * state) % 2147483647ULL;
    return state;
  }
};

// 1: twelve-level stage estimates approach 3/4, 1/4, 1/2 and tighten
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  combdendrite::Lemma34Certificate cert = combdendrite::lemma34_certificate(12);
  // deltas are {1/4, 1/2}; six stages of two levels each
  const Rational tol(1, 100);
  std::vector<Rational> half_up, half_down, quarter_up;
  for (const auto& st : cert.stages[1]) {
    half_up.push_back(rabs(st.upper - Rational(3, 4)));
    half_down.push_back(rabs(st.lower - Rational(1, 4)));
  }
  for (const auto& st : cert.stages[0])
    quarter_up.push_back(rabs(st.upper - Rational(1, 2)));

  bool close = half_up.back() <= tol && half_down.back() <= tol &&
               quarter_up.back() <= tol;
  // stages 4 -> 5 -> 6 cover levels 8, 10, 12
  bool tightening = true;
  for (std::size_t k = 4; k < 6; ++k) {
    tightening = tightening && half_up[k] <= half_up[k - 1] &&
                 half_down[k] <= half_down[k - 1] &&
                 quarter_up[k] <= quarter_up[k - 1];
  }
  double secs = seconds_since(t0);
  report(1, "stage frequencies land within 0.01 and tighten (" +
                std::to_string(secs).substr(0, 4) + "s)",
         close && tightening && secs < 5.0);
}

// 2: at delta 1/4 no anchor reaches peak frequency 1, and the maximizers
// are exactly 1/4 and 3/4 with value 3/4; sampled pairs never classify dc2
void criterion_2() {
  combdendrite::Dc2ScanResult scan = combdendrite::dc2_absence_scan(Rational(1, 4), 1024);
  bool scan_ok = scan.max_value == Rational(3, 4) && scan.argmax.size() == 2 &&
                 scan.argmax[0] == Rational(1, 4) && scan.argmax[1] == Rational(3, 4);

  bool no_dc2 = true;
  chaoscore::Tolerances tol;
  std::vector<Rational> grid{Rational(1, 256), Rational(1, 4), Rational(1, 2)};
  for (const Rational& x1 : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                             Rational(1)}) {
    chaoscore::DistanceSeries s(combdendrite::pair_distance_series(x1, 10), Rational(1));
    chaoscore::EmpiricalDF df = chaoscore::empirical_df_pair(s, grid, tol);
    chaoscore::ChaosVerdict v = chaoscore::classify_pair(df, tol);
    no_dc2 = no_dc2 && !v.dc2;
  }
  report(2, "peak frequency tops out at 3/4 on {1/4, 3/4}; no dc2 pair",
         scan_ok && no_dc2);
}

// 3: the peak frequency vanishes along delta -> 0 and the two spine ends
// agree exactly
void criterion_3() {
  std::vector<Rational> deltas;
  for (int m = 2; m <= 20; ++m)
    deltas.emplace_back(Int(1), pow_int(2, static_cast<std::uint64_t>(m)));
  bool ok = true;
  std::vector<Rational> col0, col1;
  for (const Rational& x1 : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
    auto scan = combdendrite::dc2half_limit_scan(x1, deltas);
    for (std::size_t i = 1; i < scan.size(); ++i)
      ok = ok && scan[i].second < scan[i - 1].second;
    ok = ok && scan.back().second < Rational(1, 10000);
    for (const auto& [d, v] : scan) {
      if (x1 == 0) col0.push_back(v);
      if (x1 == 1) col1.push_back(v);
    }
  }
  ok = ok && col0 == col1;
  for (std::size_t i = 0; i < deltas.size(); ++i)
    ok = ok && col0[i] == Rational(3 * deltas[i] / (1 + 2 * deltas[i]));
  report(3, "peak frequency decays to 0 with matching spine-end columns", ok);
}

// 4: the top-vs-anchor pair separates on [1/4, 1/2] without dc2 or the
// small-delta gap
void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  chaoscore::DistanceSeries s(combdendrite::pair_distance_series(Rational(1), 8),
                              Rational(1));
  chaoscore::Tolerances tol;  // 1/20 gaps
  chaoscore::DfOptions opt;
  opt.tail_start = 728;  // start of level 7, the last two stage windows
  chaoscore::EmpiricalDF df = chaoscore::empirical_df_pair(
      s, {Rational(1, 256), Rational(1, 4), Rational(1, 2)}, tol, opt);
  chaoscore::ChaosVerdict v = chaoscore::classify_pair(df, tol);
  bool interval_ok = v.dc3 && v.dc3_interval.has_value() &&
                     v.dc3_interval->first <= Rational(1, 4) &&
                     v.dc3_interval->second >= Rational(1, 2);
  double secs = seconds_since(t0);
  report(4, "frequency gap spans [1/4, 1/2] with dc2 and the small-delta gap ruled out",
         interval_ok && !v.dc2 && !v.dc2half && secs < 10.0);
}

// 5: the block-dilution pair runs together near the third zero block's end
// and apart at the fourth block boundary
void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  shiftspace::Growth growth = shiftspace::Growth::pow2sq();
  shiftspace::GrowthReport rep = shiftspace::validate_growth(growth, 8);
  bool growth_ok = rep.pass && rep.ratios.back() < Rational(1, 20);

  shiftspace::ScrambledPoint x =
      shiftspace::scrambled_point(shiftspace::SymbolicPoint::explicit_word(2, "0"), growth);
  shiftspace::ScrambledPoint y =
      shiftspace::scrambled_point(shiftspace::SymbolicPoint::explicit_word(2, "1"), growth);
  shiftspace::ScrambledPair pair(x, y, 4);
  Rational together = pair.fraction_below(Int(522), 8);
  Rational apart = pair.fraction_below(Int(66066), 8);
  bool fractions_ok = together >= Rational(9, 10) && apart <= Rational(1, 100);
  double secs = seconds_since(t0);
  report(5, "block growth validates; near fraction " + rat_str(together) + " then " +
                rat_str(apart),
         growth_ok && fractions_ok && secs < 5.0);
}

// 6: depth-8 covering certificates for the full shifts, refused by the
// golden mean
void criterion_6() {
  bool ok = shiftspace::horseshoe_check(shiftspace::Subshift::full_shift(2), "0", "1", 8) &&
            shiftspace::horseshoe_check(shiftspace::Subshift::full_shift(5), "0", "1", 8) &&
            !shiftspace::horseshoe_check(shiftspace::Subshift::golden_mean(), "0", "1", 8);
  report(6, "covering holds on full shifts and fails on the golden mean", ok);
}

// 7: exactness regressions: complement identity, walk-orbit agreement,
// slide continuity, conjugacy at depth 8
void criterion_7() {
  bool ok = true;

  // complement identity over random prefixes of each computed series
  Lcg rng;
  std::vector<Rational> anchors{Rational(1), Rational(1, 3), Rational(1, 2)};
  std::vector<Rational> deltas{Rational(1, 4), Rational(1, 2), Rational(1, 256)};
  for (const Rational& x1 : anchors) {
    chaoscore::DistanceSeries s(combdendrite::pair_distance_series(x1, 8), Rational(1));
    for (int i = 0; i < 100; ++i) {
      std::int64_t n = 1 + static_cast<std::int64_t>(rng.next() % (s.size() - 1));
      ok = ok && chaoscore::complement_identity_check(s, deltas[i % 3], n);
    }
  }

  // the symbolic itinerary is the orbit
  combdendrite::DendritePoint p = combdendrite::DendritePoint::spike_top(1, 1);
  combdendrite::LevelWalkState w;
  for (int k = 0; k < 10000; ++k) {
    ok = ok && !p.on_spine() && p.level() == w.level && p.index() == w.index;
    p = combdendrite::apply_f(p);
    w = combdendrite::walk_successor(w);
  }

  // the slide ends exactly at the successor tooth position, every tooth,
  // levels 1..6
  combdendrite::CombParams params;
  int checks = 0;
  for (int n = 1; n <= 6; ++n) {
    combdendrite::SpikeGrid grid = combdendrite::spike_grid(n);
    Rational tau = Rational(Int(params.base_at(n) - 1),
                            params.denominator(n) * params.base_at(n));
    for (const Int& j : grid.indices) {
      combdendrite::LevelWalkState succ =
          combdendrite::walk_successor({n, j, 0}, params);
      Rational target(succ.index, params.denominator(succ.level));
      ok = ok && combdendrite::psi_eval(n, j, tau) == target;
      ++checks;
    }
  }
  ok = ok && checks == 728;

  // letter dropping commutes with the shift at depth 8
  ok = ok && gehman::endpoint_conjugacy_check(shiftspace::Subshift::full_shift(2), 8);
  ok = ok && gehman::endpoint_conjugacy_check(shiftspace::Subshift::full_shift(5), 8);
  ok = ok && gehman::endpoint_conjugacy_check(shiftspace::Subshift::golden_mean(), 8);

  report(7, "exact identities hold: complement, itinerary, slide, conjugacy", ok);
}

// 8: below-top points settle onto the spine within the logarithmic cap;
// branch points fall into the root
void criterion_8() {
  bool ok = true;
  Lcg rng;
  combdendrite::CombParams params;
  int settled = 0;
  for (int i = 0; i < 1000; ++i) {
    int level = 1 + static_cast<int>(rng.next() % 5);
    Int den = params.denominator(level);
    Int j = 1 + Int(rng.next()) % (den - 1);
    while (j % 3 == 0) j = 1 + Int(rng.next()) % (den - 1);
    std::uint64_t qden = 2 + rng.next() % 8;  // 2..9
    std::uint64_t qnum = rng.next() % qden;   // strictly below the top
    Rational q = Rational(Int(qnum), Int(qden));
    Rational y = params.height(level) * q;
    combdendrite::DendritePoint p = combdendrite::DendritePoint::spike(level, j, y);

    Rational rest = 1 - q;
    std::int64_t cap = ceil_log3(denominator(rest)) + 2;
    auto t = combdendrite::eventually_fixed_time(p, cap);
    ok = ok && t.has_value();
    if (t.has_value()) ++settled;
  }
  ok = ok && settled == 1000;

  gehman::GehmanDendrite d = gehman::build_gehman(2, 8);
  for (const shiftspace::Word& w : d.nodes()) {
    gehman::GehmanPoint pt = gehman::GehmanPoint::branch(w);
    for (std::size_t s = 0; s < w.size(); ++s) pt = gehman::g_map(pt, d);
    ok = ok && pt.word.empty();
    ok = ok && w.size() <= 8;
  }
  report(8, "1000 sampled points settle within the cap; branches fall to the root", ok);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures == 0) {
    std::cout << "all 8 criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
