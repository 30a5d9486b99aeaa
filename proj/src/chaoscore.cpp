#include "dclab/chaoscore.hpp"

#include <algorithm>
#include <istream>
#include <stdexcept>
#include <string>

namespace dclab::chaoscore {

namespace {

// Index of the smallest grid delta with value < delta; grid.size() if none.
// Grid is strictly increasing, so per-value bucket + suffix counting gives
// every per-delta count in one pass.
std::size_t bucket_of(const Rational& value, const std::vector<Rational>& grid) {
  std::size_t lo = 0, hi = grid.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (value < grid[mid])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void require_grid(const std::vector<Rational>& grid, const Rational& diameter) {
  if (grid.empty()) throw std::invalid_argument("empty delta grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0 || grid[i] > diameter)
      throw std::invalid_argument("delta outside (0, diameter]: " + rat_str(grid[i]));
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("delta grid must be strictly increasing");
  }
}

// F_n as a clamped rational from an inclusive prefix count.
Rational fraction_at(std::int64_t count, std::int64_t n) {
  if (count >= n) return Rational(1);
  return Rational(count, n);
}

}  // namespace

DistanceSeries::DistanceSeries(std::vector<Rational> values, Rational diameter)
    : values_(std::move(values)), diameter_(std::move(diameter)) {
  if (values_.empty()) throw std::invalid_argument("distance series must be nonempty");
  if (diameter_ <= 0) throw std::invalid_argument("diameter must be positive");
  for (const auto& v : values_)
    if (v < 0 || v > diameter_)
      throw std::invalid_argument("distance outside [0, diameter]: " + rat_str(v));
}

DistanceSeries DistanceSeries::from_csv(std::istream& in, Rational diameter) {
  std::vector<Rational> values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    values.push_back(parse_rational(line.substr(start)));
  }
  return DistanceSeries(std::move(values), std::move(diameter));
}

void Tolerances::validate() const {
  if (one_gap <= 0 || zero_gap <= 0 || tail_fraction <= 0)
    throw std::invalid_argument("tolerances must be strictly positive");
  if (tail_fraction >= 1) throw std::invalid_argument("tail_fraction must be < 1");
  if (zero_gap > 1 - one_gap)
    throw std::invalid_argument("need zero_gap <= 1 - one_gap for a consistent hierarchy");
}

EmpiricalDF empirical_df_pair(const DistanceSeries& series,
                              std::vector<Rational> delta_grid,
                              const Tolerances& tol,
                              const DfOptions& options) {
  tol.validate();
  require_grid(delta_grid, series.diameter());

  const auto& values = series.values();
  const std::int64_t last = series.size() - 1;  // F_n defined for 1 <= n <= last
  if (last < 1) throw std::invalid_argument("series too short for any prefix fraction");

  // Times at which F_n is sampled.
  std::vector<std::int64_t> times;
  Int tail_start_out{0};
  if (!options.checkpoint_times.empty()) {
    times = options.checkpoint_times;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    for (std::int64_t t : times)
      if (t < 1 || t > last)
        throw std::invalid_argument("checkpoint time outside [1, N]: " + std::to_string(t));
    tail_start_out = times.front();
  } else {
    std::int64_t start;
    if (options.tail_start) {
      start = *options.tail_start;
      if (start < 1 || start > last)
        throw std::invalid_argument("tail_start outside [1, N]");
    } else {
      // Last tail_fraction of the available prefix lengths.
      const Rational kept = Rational(last) * tol.tail_fraction;
      start = last - static_cast<std::int64_t>(Int(kept));  // floor: kept >= 0
      if (start < 1)
        throw std::invalid_argument("series shorter than 1/(1 - tail_fraction)");
    }
    times.resize(static_cast<std::size_t>(last - start + 1));
    for (std::int64_t n = start; n <= last; ++n)
      times[static_cast<std::size_t>(n - start)] = n;
    tail_start_out = start;
  }

  const std::size_t g = delta_grid.size();
  // counts[i] = #{k <= n so far : values[k] < delta_grid[i]}
  std::vector<std::int64_t> bucket_hits(g + 1, 0);
  std::vector<std::int64_t> counts(g, 0);
  std::vector<Rational> lower(g), upper(g);
  std::vector<bool> seeded(g, false);

  Rational dist_min, dist_max;
  bool dist_seeded = false;

  std::size_t next_time = 0;
  for (std::int64_t k = 0; k <= last && next_time < times.size(); ++k) {
    ++bucket_hits[bucket_of(values[static_cast<std::size_t>(k)], delta_grid)];
    if (k >= times.front()) {
      // Distances within the sampled span feed the Li-Yorke surrogates.
      const auto& v = values[static_cast<std::size_t>(k)];
      if (!dist_seeded || v < dist_min) dist_min = v;
      if (!dist_seeded || v > dist_max) dist_max = v;
      dist_seeded = true;
    }
    if (k == times[next_time]) {
      // Turn bucket tallies into per-delta counts lazily (g is small).
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < g; ++i) {
        acc += bucket_hits[i];
        counts[i] = acc;
      }
      for (std::size_t i = 0; i < g; ++i) {
        const Rational f = fraction_at(counts[i], k);
        if (!seeded[i] || f < lower[i]) lower[i] = f;
        if (!seeded[i] || f > upper[i]) upper[i] = f;
        seeded[i] = true;
      }
      ++next_time;
    }
  }

  EmpiricalDF df;
  df.delta_grid = std::move(delta_grid);
  df.lower_est = std::move(lower);
  df.upper_est = std::move(upper);
  if (!options.checkpoint_times.empty())
    df.checkpoint_times.assign(times.begin(), times.end());
  df.tail_start = tail_start_out;
  df.diameter = series.diameter();
  df.tail_min_distance = dist_min;
  df.tail_max_distance = dist_max;
  return df;
}

bool complement_identity_check(const DistanceSeries& series, const Rational& delta,
                               std::int64_t n) {
  if (delta <= 0 || delta > series.diameter())
    throw std::invalid_argument("delta outside (0, diameter]");
  if (n < 1 || n > series.size())
    throw std::invalid_argument("prefix length outside [1, series length]");
  std::int64_t below = 0, at_least = 0;
  for (std::int64_t m = 1; m <= n; ++m) {
    const auto& v = series.values()[static_cast<std::size_t>(m - 1)];
    if (v < delta)
      ++below;
    else
      ++at_least;
    // Two independent tallies must partition the prefix exactly.
    if (below + at_least != m) return false;
    if (Rational(below, m) + Rational(at_least, m) != 1) return false;
  }
  return true;
}

ChaosVerdict classify_pair(const EmpiricalDF& df, const Tolerances& tol) {
  tol.validate();
  const std::size_t g = df.delta_grid.size();
  if (g < 2)
    throw std::invalid_argument("classify_pair needs at least 2 grid deltas");
  for (std::size_t i = 0; i < g; ++i) {
    if (df.lower_est[i] < 0 || df.upper_est[i] > 1 || df.lower_est[i] > df.upper_est[i])
      throw std::invalid_argument("malformed DF estimates");
    if (i > 0 && (df.lower_est[i] < df.lower_est[i - 1] || df.upper_est[i] < df.upper_est[i - 1]))
      throw std::invalid_argument("DF estimates must be monotone in delta");
  }

  ChaosVerdict v;
  v.tolerance = tol.one_gap;
  v.ly_liminf = df.tail_min_distance;
  v.ly_limsup = df.tail_max_distance;
  v.ly = (df.tail_min_distance <= tol.zero_gap) && (df.tail_max_distance >= tol.zero_gap);

  const Rational full = 1 - tol.one_gap;
  bool upper_all_full = true;
  for (std::size_t i = 0; i < g; ++i)
    if (df.upper_est[i] < full) upper_all_full = false;

  std::optional<Rational> dc1_witness, dc2_witness;
  for (std::size_t i = 0; i < g; ++i) {
    if (!dc1_witness && df.lower_est[i] <= tol.zero_gap) dc1_witness = df.delta_grid[i];
    if (!dc2_witness && df.lower_est[i] < full) dc2_witness = df.delta_grid[i];
  }

  // Longest contiguous run of grid points whose gap beats the tolerance;
  // leftmost wins ties.  A genuine interval needs at least two points.
  std::size_t best_start = 0, best_len = 0, run_start = 0, run_len = 0;
  for (std::size_t i = 0; i < g; ++i) {
    if (df.upper_est[i] - df.lower_est[i] > tol.one_gap) {
      if (run_len == 0) run_start = i;
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        best_start = run_start;
      }
    } else {
      run_len = 0;
    }
  }

  const bool raw_dc3 = best_len >= 2;
  const bool raw_dc2half = df.upper_est[0] - df.lower_est[0] > tol.one_gap;
  const bool raw_dc2 = upper_all_full && dc2_witness.has_value();
  const bool raw_dc1 = upper_all_full && dc1_witness.has_value();

  v.dc3 = raw_dc3;
  if (v.dc3)
    v.dc3_interval = std::make_pair(df.delta_grid[best_start],
                                    df.delta_grid[best_start + best_len - 1]);
  v.dc2half = raw_dc2half;
  v.dc2 = raw_dc2 && v.dc2half && v.dc3;
  v.dc1 = raw_dc1 && v.dc2;
  if (v.dc1)
    v.epsilon_witness = dc1_witness;
  else if (v.dc2)
    v.epsilon_witness = dc2_witness;
  return v;
}

}  // namespace dclab::chaoscore
