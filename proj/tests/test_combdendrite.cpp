#include "dclab/combdendrite.hpp"

#include <stdexcept>

#include "../vendor/doctest.h"

using namespace dclab;
using namespace dclab::combdendrite;

TEST_CASE("comb parameters and tooth grids") {
  CombParams def;
  CHECK(def.base_at(1) == 3);
  CHECK(def.base_at(7) == 3);
  CHECK(def.denominator(2) == 9);
  CHECK(def.height(3) == Rational(1, 27));
  CHECK(def.level_population(1) == 2);
  CHECK(def.level_population(2) == 6);
  CHECK(def.cumulative_teeth(2) == 8);   // 3^2 - 1
  CHECK(def.cumulative_teeth(12) == 531440);

  SpikeGrid g1 = spike_grid(1);
  REQUIRE(g1.indices.size() == 2);
  CHECK(g1.indices[0] == 1);
  CHECK(g1.indices[1] == 2);
  SpikeGrid g2 = spike_grid(2);
  REQUIRE(g2.indices.size() == 6);
  CHECK(g2.indices[2] == 4);
  CHECK(g2.indices[5] == 8);

  CombParams mixed;
  mixed.bases = {2, 4};
  CHECK(mixed.denominator(1) == 2);
  CHECK(mixed.denominator(2) == 8);
  CHECK(mixed.denominator(3) == 32);
  CHECK(mixed.level_population(1) == 1);   // only j = 1
  CHECK(mixed.level_population(2) == 6);   // j in 1..7 minus multiples of 4
  CHECK(spike_grid(2, mixed).indices.size() == 6);

  CombParams bad;
  bad.bases = {1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("points canonicalize and measure with the sup metric") {
  DendritePoint s = DendritePoint::spine(Rational(1, 2));
  CHECK(s.on_spine());
  DendritePoint dropped = DendritePoint::spike(1, 1, Rational(0));
  CHECK(dropped.on_spine());
  CHECK(dropped == DendritePoint::spine(Rational(1, 3)));

  DendritePoint t = DendritePoint::spike_top(1, 1);
  CHECK(t.y() == Rational(1, 3));
  CHECK(distance(t, s) == Rational(1, 3));
  CHECK(distance(t, DendritePoint::spine(Rational(1, 3))) == Rational(1, 3));
  CHECK(distance(DendritePoint::spine(Rational(0)), DendritePoint::spine(Rational(1))) ==
        Rational(1));

  CHECK_THROWS_AS(DendritePoint::spike(1, 3, Rational(1, 9)), std::invalid_argument);
  CHECK_THROWS_AS(DendritePoint::spike(1, 1, Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(DendritePoint::spine(Rational(2)), std::invalid_argument);
}

TEST_CASE("tooth-top itinerary order and timing") {
  // level 1 ascends, level 2 descends skipping multiples of 3
  LevelWalkState s;  // (1, 1) at time 0
  auto step = [&](int level, long index, long time) {
    CHECK(s.level == level);
    CHECK(s.index == index);
    CHECK(s.elapsed == time);
    s = walk_successor(s);
  };
  step(1, 1, 0);
  step(1, 2, 1);
  step(2, 8, 2);
  step(2, 7, 3);
  step(2, 5, 4);
  step(2, 4, 5);
  step(2, 2, 6);
  step(2, 1, 7);
  step(3, 1, 8);
  step(3, 2, 9);

  CHECK(walk_time_of(1, 1) == 0);
  CHECK(walk_time_of(2, 8) == 2);
  CHECK(walk_time_of(2, 1) == 7);
  CHECK(walk_time_of(3, 1) == 8);
  CHECK(walk_time_of(4, 1) == 79);  // descending level ends at its smallest index

  for (long t : {0L, 1L, 2L, 7L, 8L, 26L, 80L, 12345L}) {
    LevelWalkState at = walk_state_at(t);
    CHECK(at.elapsed == t);
    CHECK(walk_time_of(at.level, at.index) == t);
  }
}

TEST_CASE("slide and climb maps at frozen values") {
  // level 1 tooth bases sit at 1/3 and 2/3 with tau = 2/9
  CHECK(psi_eval(1, 1, Rational(0)) == Rational(1, 3));
  CHECK(psi_eval(1, 1, Rational(1, 9)) == Rational(1, 2));
  CHECK(psi_eval(1, 1, Rational(2, 9)) == Rational(2, 3));
  CHECK(psi_eval(1, 2, Rational(2, 9)) == Rational(8, 9));
  CHECK(psi_eval(2, 1, Rational(0)) == Rational(1, 9));

  CHECK(phi_eval(1, 1, Rational(1, 3)) == Rational(1, 3));   // top to top, same level
  CHECK(phi_eval(1, 2, Rational(1, 3)) == Rational(1, 9));   // top to top, crossing
  CHECK(phi_eval(1, 1, Rational(1, 4)) == Rational(3, 4) - Rational(2, 3));

  CHECK_THROWS_AS(psi_eval(1, 1, Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(phi_eval(1, 1, Rational(1, 9)), std::invalid_argument);
}

TEST_CASE("orbit of the first tooth top walks the tops") {
  DendritePoint p = DendritePoint::spike_top(1, 1);
  std::vector<DendritePoint> o = orbit(p, 2);
  REQUIRE(o.size() == 3);
  CHECK(o[1] == DendritePoint::spike_top(1, 2));
  CHECK(o[1].x() == Rational(2, 3));
  CHECK(o[2] == DendritePoint::spike_top(2, 8));
  CHECK(o[2].x() == Rational(8, 9));
  CHECK(o[2].y() == Rational(1, 9));

  // spine points are fixed
  DendritePoint s = DendritePoint::spine(Rational(5, 7));
  CHECK(apply_f(s) == s);

  // the walk and the orbit agree step by step
  LevelWalkState w;
  DendritePoint q = DendritePoint::spike_top(1, 1);
  for (int k = 0; k < 500; ++k) {
    CHECK(q.level() == w.level);
    CHECK(q.index() == w.index);
    q = apply_f(q);
    w = walk_successor(w);
  }
}

TEST_CASE("below-top points settle onto the spine") {
  // halfway up the lower part: two slides and the point is on the spine
  DendritePoint p = DendritePoint::spike(1, 1, Rational(1, 9));
  auto t = eventually_fixed_time(p, 10);
  REQUIRE(t.has_value());
  CHECK(*t <= 3);
  DendritePoint final = orbit(p, static_cast<int>(*t)).back();
  CHECK(final.on_spine());
  CHECK(apply_f(final) == final);

  // tooth tops never settle
  CHECK_FALSE(eventually_fixed_time(DendritePoint::spike_top(2, 5), 2000).has_value());
}

TEST_CASE("peak visit frequency closed form") {
  CHECK(phi_star_closed_form(Rational(1, 4), Rational(1, 4)).value == Rational(3, 4));
  CHECK(phi_star_closed_form(Rational(3, 4), Rational(1, 4)).value == Rational(3, 4));
  CHECK(phi_star_closed_form(Rational(1), Rational(1, 4)).value == Rational(1, 2));
  CHECK(phi_star_closed_form(Rational(0), Rational(1, 4)).value == Rational(1, 2));
  CHECK(phi_star_closed_form(Rational(1), Rational(1, 2)).value == Rational(3, 4));
  CHECK(phi_star_closed_form(Rational(1, 2), Rational(1, 2)).value == Rational(1));
  // interior anchors near delta are the maximizers
  CHECK(phi_star_closed_form(Rational(1, 8), Rational(1, 8)).value == Rational(1, 2));
  CHECK(phi_star_closed_form(Rational(1, 2), Rational(1, 8)).value <
        phi_star_closed_form(Rational(1, 8), Rational(1, 8)).value);
  CHECK_THROWS_AS(phi_star_closed_form(Rational(1), Rational(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("trough visit frequency closed form") {
  CHECK(phi_floor_closed_form(Rational(1, 2)) == Rational(1, 4));
  CHECK(phi_floor_closed_form(Rational(1, 4)) == Rational(1, 10));
  CHECK(phi_floor_closed_form(Rational(1, 8)) == Rational(1, 22));
}

TEST_CASE("anchor scan finds the exact maximizers") {
  Dc2ScanResult r = dc2_absence_scan(Rational(1, 8), 64);
  CHECK(r.max_value == Rational(1, 2));
  REQUIRE(r.argmax.size() == 2);
  CHECK(r.argmax[0] == Rational(1, 8));
  CHECK(r.argmax[1] == Rational(7, 8));

  Dc2ScanResult q = dc2_absence_scan(Rational(1, 4), 1024);
  CHECK(q.max_value == Rational(3, 4));
  REQUIRE(q.argmax.size() == 2);
  CHECK(q.argmax[0] == Rational(1, 4));
  CHECK(q.argmax[1] == Rational(3, 4));
}

TEST_CASE("stage estimates hit the frozen fractions and tighten") {
  Lemma34Certificate cert = lemma34_certificate(8);
  REQUIRE(cert.deltas.size() == 2);
  CHECK(cert.deltas[0] == Rational(1, 4));
  CHECK(cert.deltas[1] == Rational(1, 2));
  REQUIRE(cert.stages.size() == 2);
  REQUIRE(cert.stages[0].size() == 4);

  // delta = 1/2: stage 2 spans levels 3 and 4, peak 40/52 at time 52,
  // trough exactly 1/4 at time 16
  const StageEstimate& s2 = cert.stages[1][1];
  CHECK(s2.upper == Rational(40, 52));
  CHECK(s2.upper_at == 52);
  CHECK(s2.lower == Rational(1, 4));
  CHECK(s2.lower_at == 16);

  // from the second stage on, every trough for delta = 1/2 is exactly 1/4
  for (std::size_t k = 1; k < cert.stages[1].size(); ++k)
    CHECK(cert.stages[1][k].lower == Rational(1, 4));

  // delta = 1/4: stage 4 peak 1640/3279
  CHECK(cert.stages[0][3].upper == Rational(1640, 3279));

  // the peak error shrinks against the limit stage over stage
  for (std::size_t d = 0; d < 2; ++d) {
    Rational limit = phi_star_closed_form(1, cert.deltas[d]).value;
    Rational prev(-1);
    for (std::size_t k = 1; k < cert.stages[d].size(); ++k) {
      Rational err = limit - cert.stages[d][k].upper;
      if (err < 0) err = -err;
      if (prev >= 0) CHECK(err <= prev);
      prev = err;
    }
  }

  CHECK(cert.upper_final[1] == cert.stages[1][3].upper);
  CHECK(cert.lower_final[1] == Rational(1, 4));
}

TEST_CASE("stage peaks obey the explicit error band") {
  std::vector<Rational> deltas{Rational(1, 4), Rational(1, 2)};
  Lemma34Certificate cert = lemma34_certificate(10, deltas);
  CombParams params;
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    ClosedFormDF cf = phi_star_closed_form(1, deltas[d]);
    for (const StageEstimate& st : cert.stages[d]) {
      Rational err = cf.value - st.upper;
      if (err < 0) err = -err;
      Int l_odd = params.cumulative_teeth(2 * st.stage - 1);
      Rational band = (cf.near_span / deltas[d] + 4) / Rational(l_odd);
      CHECK(err <= band);
    }
  }
}

TEST_CASE("pair distance series matches the walk geometry") {
  std::vector<Rational> series = pair_distance_series(Rational(1), 4);
  REQUIRE(series.size() == 80);  // l_4
  // time 0: top (1,1) vs spine(1): max(|1 - 1/3|, 1/3) = 2/3
  CHECK(series[0] == Rational(2, 3));
  // time 1: top (1,2): max(1/3, 1/3) = 1/3
  CHECK(series[1] == Rational(1, 3));
  // time 2: top (2,8): max(1/9, 1/9) = 1/9
  CHECK(series[2] == Rational(1, 9));
  // time 7: top (2,1): max(8/9, 1/9) = 8/9
  CHECK(series[7] == Rational(8, 9));

  std::vector<Rational> mid = pair_distance_series(Rational(1, 2), 2);
  // time 0: |1/2 - 1/3| = 1/6 vs height 1/3 -> 1/3
  CHECK(mid[0] == Rational(1, 3));
  // time 3: top (2,7): |1/2 - 7/9| = 5/18 vs 1/9 -> 5/18
  CHECK(mid[3] == Rational(5, 18));
}

TEST_CASE("two tooth tops eventually travel within any delta") {
  CombParams params;
  LevelWalkState a;                      // (1,1) at time 0
  LevelWalkState b = walk_state_at(5);   // (2,4)
  Rational delta(1, 10);
  std::int64_t witness = endpoint_convergence_witness(a, b, delta, params);
  for (std::int64_t k = witness; k < witness + 300; ++k) {
    LevelWalkState wa = walk_state_at(a.elapsed + k);
    LevelWalkState wb = walk_state_at(b.elapsed + k);
    DendritePoint pa = DendritePoint::spike_top(wa.level, wa.index);
    DendritePoint pb = DendritePoint::spike_top(wb.level, wb.index);
    CHECK(distance(pa, pb) < delta);
  }
}
