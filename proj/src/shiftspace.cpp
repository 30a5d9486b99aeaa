#include "dclab/shiftspace.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "../vendor/json.hpp"

namespace dclab::shiftspace {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Largest l with l(l+1)/2 < i, plus the triangular flag for i itself.
// Block indices stay tiny (tens, not thousands), so a loop is fine.
struct TriPos {
  std::size_t l;
  bool triangular;
};

TriPos triangular_position(std::size_t i) {
  std::size_t l = 0;
  while ((l + 1) * (l + 2) / 2 < i) ++l;
  return {l, (l + 1) * (l + 2) / 2 == i};
}

}  // namespace

int symbol_value(char c) {
  if (c < '0' || c > '9') throw std::invalid_argument("symbol must be a digit 0-9");
  return c - '0';
}

char symbol_char(int v) {
  if (v < 0 || v > 9) throw std::invalid_argument("symbol value out of range");
  return static_cast<char>('0' + v);
}

// ---------------------------------------------------------------------------
// Growth

struct GrowthValidationAccess {
  static void mark(const Growth& g) { *g.validated_ = true; }
};

Growth::Growth(Kind kind, std::vector<Int> custom)
    : kind_(kind),
      custom_terms_(std::move(custom)),
      terms_(std::make_shared<std::vector<Int>>()),
      sums_(std::make_shared<std::vector<Int>>()),
      validated_(std::make_shared<bool>(false)) {
  if (kind_ == Kind::custom) {
    require(!custom_terms_.empty(), "custom growth needs at least one term");
    Int prev = 0;
    for (const Int& a : custom_terms_) {
      require(a > prev, "growth terms must be positive and strictly increasing");
      prev = a;
    }
  }
}

Growth Growth::pow2sq() { return Growth(Kind::pow2sq); }
Growth Growth::factorial() { return Growth(Kind::factorial); }
Growth Growth::custom(std::vector<Int> terms) {
  return Growth(Kind::custom, std::move(terms));
}

std::string Growth::name() const {
  switch (kind_) {
    case Kind::pow2sq: return "pow2sq";
    case Kind::factorial: return "factorial";
    case Kind::custom: return "custom";
  }
  return "custom";
}

std::size_t Growth::max_terms() const {
  if (kind_ == Kind::custom) return custom_terms_.size();
  return static_cast<std::size_t>(-1);
}

void Growth::ensure(std::size_t n) const {
  while (terms_->size() < n) {
    std::size_t i = terms_->size() + 1;
    Int a;
    switch (kind_) {
      case Kind::pow2sq:
        a = pow_int(2, static_cast<std::uint64_t>(i) * i);
        break;
      case Kind::factorial: {
        std::uint64_t f = 1;
        for (std::uint64_t j = 2; j <= i; ++j) f *= j;
        a = pow_int(Int(f), f);
        break;
      }
      case Kind::custom:
        if (i > custom_terms_.size())
          throw std::out_of_range("custom growth has no term at this index");
        a = custom_terms_[i - 1];
        break;
    }
    terms_->push_back(a);
    sums_->push_back((sums_->empty() ? Int(0) : sums_->back()) + a);
  }
}

Int Growth::term(std::size_t i) const {
  require(i >= 1, "growth terms are 1-based");
  ensure(i);
  return (*terms_)[i - 1];
}

Int Growth::partial_sum(std::size_t n) const {
  if (n == 0) return 0;
  ensure(n);
  return (*sums_)[n - 1];
}

GrowthReport validate_growth(const Growth& growth, int depth, const Rational& threshold) {
  require(depth >= 2, "validation depth must be at least 2");
  require(threshold > 0, "validation threshold must be positive");
  GrowthReport report;
  if (growth.max_terms() < static_cast<std::size_t>(depth) + 1) {
    std::ostringstream os;
    os << "needs " << depth + 1 << " terms, custom list has " << growth.max_terms();
    report.detail = os.str();
    return report;
  }
  for (int n = 1; n <= depth; ++n) {
    Rational r(growth.partial_sum(n) + n, growth.term(n + 1));
    report.ratios.push_back(r);
  }
  bool decreasing = true;
  for (std::size_t i = static_cast<std::size_t>(depth) / 2; i + 1 < report.ratios.size(); ++i) {
    if (!(report.ratios[i + 1] < report.ratios[i])) {
      decreasing = false;
      break;
    }
  }
  bool small = report.ratios.back() < threshold;
  report.pass = decreasing && small;
  if (!decreasing)
    report.detail = "spacing ratios fail to decrease over the tail";
  else if (!small)
    report.detail = "final spacing ratio is above the threshold";
  else
    report.detail = "ok";
  if (report.pass) GrowthValidationAccess::mark(growth);
  return report;
}

// ---------------------------------------------------------------------------
// SymbolicPoint

SymbolicPoint SymbolicPoint::explicit_word(int k, Word prefix) {
  require(k >= 2 && k <= 10, "alphabet size must be in [2, 10]");
  for (char c : prefix) require(symbol_value(c) < k, "word symbol outside alphabet");
  SymbolicPoint p;
  p.alphabet_ = k;
  p.explicit_ = std::move(prefix);
  p.rule_ = Rule::explicit_word;
  return p;
}

SymbolicPoint SymbolicPoint::eventually_periodic(int k, Word preperiod, Word period) {
  require(k >= 2 && k <= 10, "alphabet size must be in [2, 10]");
  require(!period.empty(), "period must be nonempty");
  for (char c : preperiod) require(symbol_value(c) < k, "word symbol outside alphabet");
  for (char c : period) require(symbol_value(c) < k, "word symbol outside alphabet");
  SymbolicPoint p;
  p.alphabet_ = k;
  p.preperiod_ = std::move(preperiod);
  p.period_ = std::move(period);
  p.rule_ = Rule::eventually_periodic;
  return p;
}

SymbolicPoint SymbolicPoint::lambda_nu(const SymbolicPoint& seed, const Growth& growth) {
  SymbolicPoint p;
  p.alphabet_ = 2;
  p.core_ = scrambled_point(seed, growth);
  p.rule_ = Rule::lambda_nu;
  return p;
}

int SymbolicPoint::symbol(std::int64_t index) const {
  require(index >= 0, "symbol index must be nonnegative");
  std::int64_t i = offset_ + index;
  switch (rule_) {
    case Rule::explicit_word:
      return i < static_cast<std::int64_t>(explicit_.size())
                 ? symbol_value(explicit_[static_cast<std::size_t>(i)])
                 : 0;
    case Rule::eventually_periodic: {
      std::int64_t pre = static_cast<std::int64_t>(preperiod_.size());
      if (i < pre) return symbol_value(preperiod_[static_cast<std::size_t>(i)]);
      std::int64_t per = static_cast<std::int64_t>(period_.size());
      return symbol_value(period_[static_cast<std::size_t>((i - pre) % per)]);
    }
    case Rule::lambda_nu:
      return core_->symbol(Int(i));
  }
  return 0;
}

Word SymbolicPoint::prefix(std::int64_t length) const {
  require(length >= 0, "prefix length must be nonnegative");
  Word w;
  w.reserve(static_cast<std::size_t>(length));
  for (std::int64_t i = 0; i < length; ++i) w.push_back(symbol_char(symbol(i)));
  return w;
}

SymbolicPoint sigma(const SymbolicPoint& x) {
  SymbolicPoint y = x;
  y.offset_ += 1;
  return y;
}

Rational shift_metric(const SymbolicPoint& x, const SymbolicPoint& y, std::int64_t horizon) {
  require(horizon >= 1, "metric horizon must be at least 1");
  for (std::int64_t i = 0; i < horizon; ++i) {
    if (x.symbol(i) != y.symbol(i))
      return Rational(Int(1), pow_int(2, static_cast<std::uint64_t>(i)));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// lambda and nu

Word lambda_map(const SymbolicPoint& x, std::int64_t out_len) {
  require(out_len >= 0, "output length must be nonnegative");
  Word out;
  out.reserve(static_cast<std::size_t>(out_len));
  for (std::int64_t t = 1; static_cast<std::int64_t>(out.size()) < out_len; ++t) {
    for (std::int64_t j = 0; j < t && static_cast<std::int64_t>(out.size()) < out_len; ++j)
      out.push_back(symbol_char(x.symbol(j)));
  }
  return out;
}

Word nu_map(const SymbolicPoint& x, const Growth& growth, std::int64_t out_len) {
  require(out_len >= 0, "output length must be nonnegative");
  Word out;
  out.reserve(static_cast<std::size_t>(out_len));
  std::int64_t coords_used = 0;
  for (std::size_t i = 1; static_cast<std::int64_t>(out.size()) < out_len; ++i) {
    TriPos pos = triangular_position(i);
    char c = '0';
    if (!pos.triangular) c = symbol_char(x.symbol(coords_used++));
    Int len = growth.term(i);
    while (len > 0 && static_cast<std::int64_t>(out.size()) < out_len) {
      out.push_back(c);
      --len;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ScrambledCore

ScrambledCore::ScrambledCore(SymbolicPoint seed, Growth growth)
    : seed_(std::move(seed)), growth_(std::move(growth)) {
  require(seed_.alphabet_size() == 2, "scrambled seeds must be binary");
}

void ScrambledCore::ensure_block(std::size_t i) const {
  while (blocks_.size() < i) {
    std::size_t j = blocks_.size() + 1;
    TriPos pos = triangular_position(j);
    Block b;
    b.start = growth_.partial_sum(j - 1);
    b.length = growth_.term(j);
    b.coord = pos.triangular ? -1 : static_cast<int>(j - (pos.l * (pos.l + 1) / 2) - 1);
    blocks_.push_back(b);
  }
}

Block ScrambledCore::block(std::size_t i) const {
  require(i >= 1, "block indices are 1-based");
  ensure_block(i);
  return blocks_[i - 1];
}

std::size_t ScrambledCore::block_containing(const Int& index) const {
  require(index >= 0, "coordinate index must be nonnegative");
  std::size_t i = 1;
  while (growth_.partial_sum(i) <= index) ++i;
  return i;
}

int ScrambledCore::symbol(const Int& index) const {
  Block b = block(block_containing(index));
  return b.coord < 0 ? 0 : seed_.symbol(b.coord);
}

ScrambledPoint scrambled_point(const SymbolicPoint& seed, const Growth& growth) {
  require(seed.alphabet_size() == 2, "scrambled seeds must be binary");
  if (!growth.validated())
    throw std::invalid_argument(
        "growth sequence not validated; run validate_growth and require a pass");
  return std::make_shared<ScrambledCore>(seed, growth);
}

// ---------------------------------------------------------------------------
// ScrambledPair

ScrambledPair::ScrambledPair(const ScrambledPoint& x, const ScrambledPoint& y,
                             std::size_t blocks) {
  require(x != nullptr && y != nullptr, "scrambled points must be non-null");
  require(blocks >= 1, "need at least one block");
  for (std::size_t i = 1; i <= blocks; ++i) {
    require(x->growth().term(i) == y->growth().term(i),
            "scrambled points use different growth sequences");
    Block b = x->block(i);
    block_ends_.push_back(b.start + b.length);
    if (b.coord < 0) zero_block_ends_.push_back(b.start + b.length);
    if (b.coord < 0) continue;
    if (x->seed().symbol(b.coord) == y->seed().symbol(b.coord)) continue;
    if (!intervals_.empty() && intervals_.back().second == b.start)
      intervals_.back().second = b.start + b.length;
    else
      intervals_.emplace_back(b.start, b.start + b.length);
  }
  horizon_ = block_ends_.back();
}

namespace {

// Separation ahead of a disagreement decays as 2^-j in the gap length j,
// and j can pass 10^14 once late coordinate blocks enter the horizon.
// Saturate the exponent at 1024: the result only ever feeds comparisons
// against tolerances many orders of magnitude larger, and materializing
// the exact power would try to allocate terabyte-sized integers.
Rational gap_distance(const Int& j) {
  std::uint64_t e = j > 1024 ? std::uint64_t{1024} : j.convert_to<std::uint64_t>();
  return Rational(Int(1), pow_int(2, e));
}

}  // namespace

Rational ScrambledPair::distance_at(const Int& k) const {
  require(k >= 0 && k < horizon_, "time outside the analyzed horizon");
  for (const auto& [s, e] : intervals_) {
    if (e <= k) continue;
    if (s <= k) return 1;
    return gap_distance(s - k);
  }
  return 0;
}

Int ScrambledPair::count_clean(const Int& n, int m) const {
  // Clean k in [0, n]: the inclusive window [k, k+m] misses every
  // disagreement interval.  Walk the gaps between intervals; everything
  // after the last interval is clean by construction.
  Int count = 0;
  Int gap_start = 0;
  for (const auto& [s, e] : intervals_) {
    // k must sit in [gap_start, s - m - 1] to keep the window left of s.
    Int hi = s - m - 1;
    if (hi > n) hi = n;
    if (hi >= gap_start) count += hi - gap_start + 1;
    gap_start = e;
  }
  if (n >= gap_start) count += n - gap_start + 1;
  return count;
}

Rational ScrambledPair::fraction_below(const Int& n, int m) const {
  require(n >= 1 && n <= horizon_, "time outside the analyzed horizon");
  require(m >= 0, "window width must be nonnegative");
  Int count = count_clean(n, m);
  if (count > n) count = n;
  return Rational(count, n);
}

std::vector<Int> ScrambledPair::checkpoint_times(const std::vector<int>& exponents) const {
  std::vector<Int> times = block_ends_;
  for (int m : exponents) {
    for (const Int& b : zero_block_ends_) {
      if (b - m >= 1) times.push_back(b - m);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

chaoscore::EmpiricalDF ScrambledPair::df(const std::vector<Rational>& delta_grid) const {
  require(!delta_grid.empty(), "delta grid must be nonempty");
  std::vector<int> exponents;
  for (const Rational& d : delta_grid) exponents.push_back(delta_exponent(d));
  std::vector<Int> times = checkpoint_times(exponents);
  require(!times.empty(), "no checkpoint times inside the horizon");

  chaoscore::EmpiricalDF df;
  df.delta_grid = delta_grid;
  df.checkpoint_times = times;
  df.tail_start = times.front();
  df.diameter = 1;
  df.lower_est.assign(delta_grid.size(), Rational(2));
  df.upper_est.assign(delta_grid.size(), Rational(-1));
  for (const Int& n : times) {
    for (std::size_t gi = 0; gi < delta_grid.size(); ++gi) {
      Rational f = fraction_below(n, exponents[gi]);
      df.lower_est[gi] = std::min(df.lower_est[gi], f);
      df.upper_est[gi] = std::max(df.upper_est[gi], f);
    }
  }

  // Distance extremes over [first checkpoint, horizon) for proximality and
  // separation checks downstream.
  const Int& t0 = times.front();
  bool hits_disagreement = false;
  for (const auto& [s, e] : intervals_)
    if (e > t0) hits_disagreement = true;
  df.tail_max_distance = hits_disagreement ? Rational(1) : Rational(0);
  if (intervals_.empty() || intervals_.back().second < horizon_) {
    df.tail_min_distance = 0;
  } else {
    Rational best(1);
    Int gap_start = 0;
    for (const auto& [s, e] : intervals_) {
      Int from = std::max(gap_start, t0);
      if (from < s) {
        best = std::min(best, gap_distance(s - from));
      }
      gap_start = e;
    }
    df.tail_min_distance = best;
  }
  return df;
}

// ---------------------------------------------------------------------------
// Subshift

Subshift::Subshift(int alphabet_size, std::vector<Word> forbidden, MembershipHook hook)
    : alphabet_(alphabet_size), forbidden_(std::move(forbidden)), hook_(std::move(hook)) {
  require(alphabet_ >= 2 && alphabet_ <= 10, "alphabet size must be in [2, 10]");
  for (const Word& w : forbidden_) {
    require(!w.empty(), "forbidden words must be nonempty");
    for (char c : w) require(symbol_value(c) < alphabet_, "forbidden word outside alphabet");
    max_forbidden_len_ = std::max(max_forbidden_len_, w.size());
  }
}

Subshift Subshift::full_shift(int k) { return Subshift(k, {}); }

Subshift Subshift::golden_mean() { return Subshift(2, {"11"}); }

bool Subshift::admissible(const Word& w) const {
  for (char c : w) {
    int v = c - '0';
    if (c < '0' || c > '9' || v >= alphabet_) return false;
  }
  for (const Word& f : forbidden_)
    if (w.find(f) != Word::npos) return false;
  if (hook_ && !hook_(w)) return false;
  return true;
}

std::vector<Word> Subshift::language(int length) const {
  require(length >= 0, "word length must be nonnegative");
  std::vector<Word> current{Word()};
  if (hook_ && !hook_(Word())) current.clear();
  for (int len = 0; len < length; ++len) {
    std::vector<Word> next;
    next.reserve(current.size() * static_cast<std::size_t>(alphabet_));
    for (const Word& w : current) {
      for (int c = 0; c < alphabet_; ++c) {
        Word ext = w;
        ext.push_back(symbol_char(c));
        // Only factors ending at the new letter can be newly forbidden.
        bool ok = true;
        for (const Word& f : forbidden_) {
          if (ext.size() >= f.size() &&
              ext.compare(ext.size() - f.size(), f.size(), f) == 0) {
            ok = false;
            break;
          }
        }
        if (ok && hook_ && !hook_(ext)) ok = false;
        if (ok) next.push_back(std::move(ext));
      }
    }
    current = std::move(next);
  }
  return current;
}

bool Subshift::extendable(int depth) const {
  require(depth >= 1, "extendability depth must be at least 1");
  for (int len = 0; len < depth; ++len) {
    for (const Word& w : language(len)) {
      bool extends = false;
      for (int c = 0; c < alphabet_ && !extends; ++c) {
        Word ext = w;
        ext.push_back(symbol_char(c));
        if (admissible(ext)) extends = true;
      }
      if (!extends) return false;
    }
  }
  return true;
}

Subshift Subshift::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int k = j.at("alphabet_size").get<int>();
  std::vector<Word> forbidden;
  if (j.contains("forbidden_words"))
    for (const auto& f : j.at("forbidden_words")) forbidden.push_back(f.get<std::string>());
  return Subshift(k, std::move(forbidden));
}

std::string Subshift::to_json_text() const {
  nlohmann::json j;
  j["alphabet_size"] = alphabet_;
  j["forbidden_words"] = forbidden_;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Horseshoe certificate

bool horseshoe_check(const Subshift& shift, const Word& word_a, const Word& word_b,
                     int depth) {
  require(!word_a.empty() && !word_b.empty(), "base words must be nonempty");
  require(shift.admissible(word_a) && shift.admissible(word_b),
          "base words must be admissible");
  bool a_prefix_b = word_b.compare(0, word_a.size(), word_a) == 0;
  bool b_prefix_a = word_a.compare(0, word_b.size(), word_b) == 0;
  require(!a_prefix_b && !b_prefix_a, "base cylinders must be disjoint");
  int min_depth = static_cast<int>(std::max(word_a.size(), word_b.size()));
  require(depth >= min_depth, "depth must cover both base words");

  for (const Word& u : shift.language(depth)) {
    bool in_a = u.compare(0, word_a.size(), word_a) == 0;
    bool in_b = u.compare(0, word_b.size(), word_b) == 0;
    if (!in_a && !in_b) continue;
    for (const Word* w : {&word_a, &word_b}) {
      const Word tail = w->substr(1);
      if (u.compare(0, tail.size(), tail) != 0) return false;
      Word pulled;
      pulled.push_back((*w)[0]);
      pulled += u;
      if (!shift.admissible(pulled)) return false;
    }
  }
  return true;
}

}  // namespace dclab::shiftspace
