#include "dclab/combdendrite.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace dclab::combdendrite {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

// ---------------------------------------------------------------------------
// CombParams

void CombParams::validate() const {
  require(!bases.empty(), "at least one subdivision base is required");
  for (int b : bases) require(b >= 2, "subdivision bases must be at least 2");
}

int CombParams::base_at(int level) const {
  require(level >= 1, "levels are 1-based");
  std::size_t i = static_cast<std::size_t>(level - 1);
  return i < bases.size() ? bases[i] : bases.back();
}

Int CombParams::denominator(int level) const {
  require(level >= 0, "level must be nonnegative");
  Int d = 1;
  for (int n = 1; n <= level; ++n) d *= base_at(n);
  return d;
}

Rational CombParams::height(int level) const {
  return Rational(Int(1), denominator(level));
}

Int CombParams::level_population(int level) const {
  Int d = denominator(level);
  return d - d / base_at(level);
}

Int CombParams::cumulative_teeth(int level) const {
  require(level >= 0, "level must be nonnegative");
  Int total = 0;
  for (int n = 1; n <= level; ++n) total += level_population(n);
  return total;
}

SpikeGrid spike_grid(int level, const CombParams& params) {
  params.validate();
  require(level >= 1, "levels are 1-based");
  SpikeGrid grid;
  grid.level = level;
  grid.denominator = params.denominator(level);
  grid.height = params.height(level);
  require(grid.denominator <= 1000000, "grid too large to materialize");
  int b = params.base_at(level);
  for (Int j = 1; j < grid.denominator; ++j)
    if (j % b != 0) grid.indices.push_back(j);
  return grid;
}

// ---------------------------------------------------------------------------
// DendritePoint

DendritePoint DendritePoint::spine(const Rational& x) {
  require(x >= 0 && x <= 1, "spine coordinate must lie in [0, 1]");
  DendritePoint p;
  p.x_ = x;
  return p;
}

DendritePoint DendritePoint::spike(int level, const Int& index, const Rational& y,
                                   const CombParams& params) {
  params.validate();
  require(level >= 1, "levels are 1-based");
  Int den = params.denominator(level);
  require(index >= 1 && index < den, "tooth index out of range");
  require(index % params.base_at(level) != 0, "index names a coarser position");
  Rational x(index, den);
  if (y == 0) return spine(x);
  require(y > 0 && y <= params.height(level), "tooth height out of range");
  DendritePoint p;
  p.level_ = level;
  p.index_ = index;
  p.x_ = x;
  p.y_ = y;
  return p;
}

DendritePoint DendritePoint::spike_top(int level, const Int& index,
                                       const CombParams& params) {
  return spike(level, index, params.height(level), params);
}

Rational distance(const DendritePoint& a, const DendritePoint& b) {
  return std::max(rat_abs(a.x() - b.x()), rat_abs(a.y() - b.y()));
}

// ---------------------------------------------------------------------------
// Tooth-top itinerary

LevelWalkState walk_successor(const LevelWalkState& s, const CombParams& params) {
  params.validate();
  int b = params.base_at(s.level);
  LevelWalkState next;
  next.elapsed = s.elapsed + 1;
  if (s.level % 2 == 1) {
    if (s.index == params.denominator(s.level) - 1) {
      next.level = s.level + 1;
      next.index = params.denominator(s.level + 1) - 1;
    } else {
      next.level = s.level;
      next.index = s.index + (s.index % b == b - 1 ? 2 : 1);
    }
  } else {
    if (s.index == 1) {
      next.level = s.level + 1;
      next.index = 1;
    } else {
      next.level = s.level;
      next.index = s.index - (s.index % b == 1 ? 2 : 1);
    }
  }
  return next;
}

std::int64_t walk_time_of(int level, const Int& index, const CombParams& params) {
  params.validate();
  require(level >= 1, "levels are 1-based");
  int b = params.base_at(level);
  require(index >= 1 && index < params.denominator(level) && index % b != 0,
          "index is not a tooth of this level");
  Int ascending = index - index / b;  // teeth at or before this index
  Int t;
  if (level % 2 == 1)
    t = params.cumulative_teeth(level - 1) + ascending - 1;
  else
    t = params.cumulative_teeth(level - 1) + params.level_population(level) - ascending;
  return static_cast<std::int64_t>(t);
}

LevelWalkState walk_state_at(std::int64_t time, const CombParams& params) {
  params.validate();
  require(time >= 0, "itinerary times are nonnegative");
  int level = 1;
  while (params.cumulative_teeth(level) <= time) ++level;
  Int offset = time - params.cumulative_teeth(level - 1);
  int b = params.base_at(level);
  Int a = level % 2 == 1 ? offset + 1 : params.level_population(level) - offset;
  LevelWalkState s;
  s.level = level;
  s.index = a + (a - 1) / (b - 1);  // a-th non-multiple of b
  s.elapsed = time;
  return s;
}

// ---------------------------------------------------------------------------
// The map

namespace {

// Lower-part extent of a level-n tooth: everything at or below this height
// slides to the spine in one step.
Rational lower_threshold(int level, const CombParams& params) {
  int b = params.base_at(level);
  return Rational(Int(b - 1), params.denominator(level) * b);
}

}  // namespace

Rational psi_eval(int level, const Int& index, const Rational& y,
                  const CombParams& params) {
  Rational tau = lower_threshold(level, params);
  require(y >= 0 && y <= tau, "height outside the lower part of the tooth");
  LevelWalkState here{level, index, 0};
  // Validates level and index as a side effect.
  (void)walk_time_of(level, index, params);
  LevelWalkState succ = walk_successor(here, params);
  Rational z(index, params.denominator(level));
  Rational z_next(succ.index, params.denominator(succ.level));
  return z + (y / tau) * (z_next - z);
}

Rational phi_eval(int level, const Int& index, const Rational& y,
                  const CombParams& params) {
  Rational tau = lower_threshold(level, params);
  require(y > tau && y <= params.height(level),
          "height outside the upper part of the tooth");
  LevelWalkState here{level, index, 0};
  (void)walk_time_of(level, index, params);
  LevelWalkState succ = walk_successor(here, params);
  if (succ.level > level) {
    // Linear transfer of the upper part onto the full next-level tooth; in
    // normalized height this is the same q -> b q - (b - 1) rule, and with a
    // constant base it reduces to y - tau.
    Rational upper_len = params.height(level) - tau;  // 1/(B_n b_n)
    return (y - tau) * params.height(succ.level) / upper_len;
  }
  int b = params.base_at(level);
  return b * y - Rational(Int(b - 1), params.denominator(level));
}

DendritePoint apply_f(const DendritePoint& p, const CombParams& params) {
  if (p.on_spine()) return p;
  Rational tau = lower_threshold(p.level(), params);
  LevelWalkState succ = walk_successor({p.level(), p.index(), 0}, params);
  if (p.y() <= tau)
    return DendritePoint::spine(psi_eval(p.level(), p.index(), p.y(), params));
  return DendritePoint::spike(succ.level, succ.index,
                              phi_eval(p.level(), p.index(), p.y(), params), params);
}

std::vector<DendritePoint> orbit(const DendritePoint& p, int steps,
                                 const CombParams& params) {
  require(steps >= 0, "step count must be nonnegative");
  std::vector<DendritePoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(p);
  for (int i = 0; i < steps; ++i) out.push_back(apply_f(out.back(), params));
  return out;
}

std::optional<std::int64_t> eventually_fixed_time(const DendritePoint& p,
                                                  std::int64_t cap,
                                                  const CombParams& params) {
  require(cap >= 0, "cap must be nonnegative");
  DendritePoint q = p;
  for (std::int64_t t = 0; t <= cap; ++t) {
    if (q.on_spine()) return t;
    q = apply_f(q, params);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closed-form peak frequency

ClosedFormDF phi_star_closed_form(const Rational& x1, const Rational& delta) {
  require(x1 >= 0 && x1 <= 1, "anchor must lie on the spine");
  require(delta > 0 && delta <= Rational(1, 2),
          "closed form holds for delta in (0, 1/2]");
  ClosedFormDF out;
  Rational lo = std::max(Rational(x1 - delta), Rational(0));
  Rational hi = std::min(Rational(x1 + delta), Rational(1));
  out.near_span = hi - lo;
  out.right_span =
      x1 <= Rational(1, 2) ? Rational(x1 + delta) : Rational(1 - x1 + delta);
  out.value = 3 * out.near_span / (1 + 2 * out.right_span);
  return out;
}

Rational phi_floor_closed_form(const Rational& delta) {
  require(delta > 0 && delta <= Rational(1, 2),
          "closed form holds for delta in (0, 1/2]");
  return delta / (3 - 2 * delta);
}

Dc2ScanResult dc2_absence_scan(const Rational& delta, int grid_size) {
  require(grid_size >= 2, "anchor grid needs at least two cells");
  std::vector<Rational> anchors;
  for (int i = 0; i <= grid_size; ++i) anchors.emplace_back(i, grid_size);
  anchors.push_back(delta);
  anchors.push_back(1 - delta);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  Dc2ScanResult result;
  result.delta = delta;
  result.max_value = -1;
  for (const Rational& x : anchors) {
    Rational v = phi_star_closed_form(x, delta).value;
    if (v > result.max_value) {
      result.max_value = v;
      result.argmax.clear();
    }
    if (v == result.max_value) result.argmax.push_back(x);
  }
  return result;
}

std::vector<std::pair<Rational, Rational>> dc2half_limit_scan(
    const Rational& x1, const std::vector<Rational>& deltas) {
  require(!deltas.empty(), "delta grid must be nonempty");
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(deltas.size());
  for (const Rational& d : deltas)
    out.emplace_back(d, phi_star_closed_form(x1, d).value);
  return out;
}

// ---------------------------------------------------------------------------
// Stage certificate for the anchor at 1

Lemma34Certificate lemma34_certificate(int levels, const std::vector<Rational>& deltas) {
  require(levels >= 2 && levels % 2 == 0, "need a positive even number of levels");
  require(!deltas.empty(), "delta list must be nonempty");
  for (const Rational& d : deltas) require(d > 0 && d < 1, "deltas must lie in (0, 1)");

  CombParams params;  // classical comb
  int stages = levels / 2;
  std::vector<std::int64_t> lvl_start(static_cast<std::size_t>(levels) + 1);
  for (int n = 0; n <= levels; ++n)
    lvl_start[static_cast<std::size_t>(n)] =
        static_cast<std::int64_t>(params.cumulative_teeth(n));
  std::int64_t total = lvl_start[static_cast<std::size_t>(levels)];

  struct Extreme {
    std::int64_t count = 0, at = 0, time = -1;
  };
  std::size_t nd = deltas.size();
  // [delta][stage]
  std::vector<std::vector<Extreme>> mins(nd, std::vector<Extreme>(stages));
  std::vector<std::vector<Extreme>> maxs(nd, std::vector<Extreme>(stages));

  std::vector<Int> num(nd), den(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    num[i] = numerator(deltas[i]);
    den[i] = denominator(deltas[i]);
  }

  std::map<std::int64_t, int> mid_time;  // mid-level sample times
  for (int n = 1; n <= levels; ++n) {
    std::int64_t mid =
        (lvl_start[static_cast<std::size_t>(n - 1)] + lvl_start[static_cast<std::size_t>(n)]) / 2;
    mid_time[mid] = n;
  }

  Lemma34Certificate cert;
  cert.deltas = deltas;

  std::vector<std::int64_t> counts(nd, 0);
  LevelWalkState s;  // time 0 at (1, 1)
  Int base_den = 3;
  Int level_den = base_den;  // B_1

  auto close_to_anchor = [&](std::size_t i) {
    // max(1 - j/B_n, 1/B_n) < delta, via cross-multiplication.
    return (level_den - s.index) * den[i] < num[i] * level_den &&
           den[i] < num[i] * level_den;
  };

  for (std::size_t i = 0; i < nd; ++i)
    if (close_to_anchor(i)) ++counts[i];

  for (std::int64_t n = 1; n < total; ++n) {
    int prev_level = s.level;
    s = walk_successor(s, params);
    if (s.level != prev_level) level_den *= 3;
    int stage = -1;
    for (int k = 1; k <= stages; ++k) {
      if (n >= lvl_start[static_cast<std::size_t>(2 * k - 2)] &&
          n < lvl_start[static_cast<std::size_t>(2 * k)]) {
        stage = k - 1;
        break;
      }
    }
    auto mid_it = mid_time.find(n);
    for (std::size_t i = 0; i < nd; ++i) {
      if (close_to_anchor(i)) ++counts[i];
      std::int64_t c = std::min(counts[i], n);  // clamp F at 1
      if (stage >= 0) {
        Extreme& lo = mins[i][static_cast<std::size_t>(stage)];
        Extreme& hi = maxs[i][static_cast<std::size_t>(stage)];
        // F = c/n against stored count/at, compared as cross products.
        if (lo.time < 0 || c * lo.at < lo.count * n) lo = {c, n, n};
        if (hi.time < 0 || c * hi.at > hi.count * n) hi = {c, n, n};
      }
      if (mid_it != mid_time.end())
        cert.rows.push_back({n, deltas[i], Rational(Int(c), Int(n))});
    }
  }

  cert.stages.assign(nd, {});
  for (std::size_t i = 0; i < nd; ++i) {
    for (int k = 0; k < stages; ++k) {
      const Extreme& lo = mins[i][static_cast<std::size_t>(k)];
      const Extreme& hi = maxs[i][static_cast<std::size_t>(k)];
      StageEstimate est;
      est.stage = k + 1;
      est.window_begin = lvl_start[static_cast<std::size_t>(2 * k)];
      est.window_end = lvl_start[static_cast<std::size_t>(2 * k + 2)];
      est.lower = Rational(Int(lo.count), Int(lo.at));
      est.upper = Rational(Int(hi.count), Int(hi.at));
      est.lower_at = lo.time;
      est.upper_at = hi.time;
      cert.stages[i].push_back(est);
      cert.rows.push_back({lo.time, deltas[i], est.lower});
      cert.rows.push_back({hi.time, deltas[i], est.upper});
    }
    cert.lower_final.push_back(cert.stages[i].back().lower);
    cert.upper_final.push_back(cert.stages[i].back().upper);
  }
  std::sort(cert.rows.begin(), cert.rows.end(), [](const CertRow& a, const CertRow& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.delta < b.delta;
  });
  cert.rows.erase(std::unique(cert.rows.begin(), cert.rows.end(),
                              [](const CertRow& a, const CertRow& b) {
                                return a.time == b.time && a.delta == b.delta;
                              }),
                  cert.rows.end());
  return cert;
}

// ---------------------------------------------------------------------------
// Distance series and convergence witness

std::vector<Rational> pair_distance_series(const Rational& x1, int levels,
                                           const CombParams& params) {
  params.validate();
  require(x1 >= 0 && x1 <= 1, "anchor must lie on the spine");
  require(levels >= 1, "need at least one level");
  std::int64_t total = static_cast<std::int64_t>(params.cumulative_teeth(levels));
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(total));
  LevelWalkState s;
  Rational h = params.height(1);
  Int den = params.denominator(1);
  for (std::int64_t t = 0; t < total; ++t) {
    if (t > 0) {
      int prev = s.level;
      s = walk_successor(s, params);
      if (s.level != prev) {
        den = params.denominator(s.level);
        h = params.height(s.level);
      }
    }
    out.push_back(std::max(rat_abs(x1 - Rational(s.index, den)), h));
  }
  return out;
}

std::int64_t endpoint_convergence_witness(const LevelWalkState& a,
                                          const LevelWalkState& b,
                                          const Rational& delta,
                                          const CombParams& params) {
  params.validate();
  require(delta > 0, "delta must be positive");
  std::int64_t ta = walk_time_of(a.level, a.index, params);
  std::int64_t tb = walk_time_of(b.level, b.index, params);
  Int gap = ta > tb ? ta - tb : tb - ta;
  Int need = (2 * gap + 1) * denominator(delta);
  int m = 1;
  while (params.denominator(m) * numerator(delta) <= need) ++m;
  Int witness = params.cumulative_teeth(m - 1) - std::min(ta, tb);
  return witness < 0 ? 0 : static_cast<std::int64_t>(witness);
}

}  // namespace dclab::combdendrite
