#include "dclab/gehman.hpp"

#include <algorithm>
#include <stdexcept>

#include "../vendor/json.hpp"

namespace dclab::gehman {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Rational pow2_inv(int e) { return Rational(Int(1), pow_int(2, static_cast<std::uint64_t>(e))); }

std::size_t lcp_len(const Word& a, const Word& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

// ---------------------------------------------------------------------------
// GehmanDendrite

GehmanDendrite::GehmanDendrite(Subshift shift, int depth)
    : shift_(std::move(shift)), depth_(depth) {
  require(depth_ >= 1, "depth must be at least 1");
  for (int len = 0; len <= depth_; ++len) {
    std::vector<Word> layer = shift_.language(len);
    if (layer.empty()) throw std::invalid_argument("language dies out before the depth");
    nodes_.insert(nodes_.end(), layer.begin(), layer.end());
  }
  std::sort(nodes_.begin(), nodes_.end());
}

bool GehmanDendrite::has_node(const Word& w) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), w);
}

int GehmanDendrite::branch_degree(const Word& w) const {
  require(has_node(w), "not a node of this tree");
  int children = 0;
  for (int c = 0; c < shift_.alphabet_size(); ++c) {
    Word ext = w;
    ext.push_back(shiftspace::symbol_char(c));
    if (shift_.admissible(ext)) ++children;
  }
  return children + (w.empty() ? 0 : 1);
}

Rational GehmanDendrite::edge_length(const Word& w) const {
  require(!w.empty(), "the root has no incoming edge");
  require(has_node(w), "not a node of this tree");
  return pow2_inv(static_cast<int>(w.size()));
}

Rational GehmanDendrite::root_distance(const Word& w) const {
  require(has_node(w), "not a node of this tree");
  return 1 - pow2_inv(static_cast<int>(w.size()));
}

std::string GehmanDendrite::to_json_text() const {
  nlohmann::json j;
  j["alphabet_size"] = shift_.alphabet_size();
  j["forbidden_words"] = shift_.forbidden();
  j["depth"] = depth_;
  j["nodes"] = nodes_;
  nlohmann::json edges = nlohmann::json::array();
  for (const Word& w : nodes_) {
    if (w.empty()) continue;
    edges.push_back({w.substr(0, w.size() - 1), w, rat_str(edge_length(w))});
  }
  j["edges"] = edges;
  return j.dump(2);
}

GehmanDendrite build_gehman(int k, int depth) {
  require(k >= 2, "need at least two letters to branch");
  return GehmanDendrite(Subshift::full_shift(k), depth);
}

GehmanDendrite subdendrite(const Subshift& shift, int depth) {
  return GehmanDendrite(shift, depth);
}

// ---------------------------------------------------------------------------
// Points and the letter-dropping map

GehmanPoint GehmanPoint::branch(Word w) {
  GehmanPoint p;
  p.kind = Kind::branch;
  p.word = std::move(w);
  return p;
}

GehmanPoint GehmanPoint::endpoint(SymbolicPoint x) {
  GehmanPoint p;
  p.kind = Kind::endpoint;
  p.end = std::move(x);
  return p;
}

GehmanPoint GehmanPoint::arc(Word w, Rational t) {
  require(!w.empty(), "arc points live on edges, which the root lacks");
  require(t >= 0 && t <= 1, "arc parameter must lie in [0, 1]");
  GehmanPoint p;
  p.kind = Kind::arc;
  p.word = std::move(w);
  p.t = std::move(t);
  return p;
}

namespace {

void check_point(const GehmanPoint& p, const GehmanDendrite& d) {
  switch (p.kind) {
    case GehmanPoint::Kind::branch:
    case GehmanPoint::Kind::arc:
      require(d.has_node(p.word), "point names a node outside the tree");
      break;
    case GehmanPoint::Kind::endpoint:
      require(p.end.has_value(), "endpoint without a sequence");
      require(p.end->alphabet_size() == d.shift().alphabet_size(),
              "endpoint alphabet does not match the tree");
      require(d.shift().admissible(p.end->prefix(d.depth())),
              "endpoint sequence is not admissible");
      break;
  }
}

// Arc-length distance from the root, with endpoints at the far limit 1.
Rational depth_coord(const GehmanPoint& p) {
  switch (p.kind) {
    case GehmanPoint::Kind::branch:
      return 1 - pow2_inv(static_cast<int>(p.word.size()));
    case GehmanPoint::Kind::arc:
      return 1 - (2 - p.t) * pow2_inv(static_cast<int>(p.word.size()));
    case GehmanPoint::Kind::endpoint:
      return 1;
  }
  return 0;
}

}  // namespace

GehmanPoint g_map(const GehmanPoint& p, const GehmanDendrite& d) {
  check_point(p, d);
  switch (p.kind) {
    case GehmanPoint::Kind::branch:
      if (p.word.empty()) return p;
      return GehmanPoint::branch(p.word.substr(1));
    case GehmanPoint::Kind::arc:
      if (p.word.size() == 1) return GehmanPoint::branch(Word());
      return GehmanPoint::arc(p.word.substr(1), p.t);
    case GehmanPoint::Kind::endpoint:
      return GehmanPoint::endpoint(shiftspace::sigma(*p.end));
  }
  return p;
}

Rational arc_distance(const GehmanPoint& a, const GehmanPoint& b,
                      const GehmanDendrite& d) {
  check_point(a, d);
  check_point(b, d);
  if (a.kind == GehmanPoint::Kind::endpoint && b.kind == GehmanPoint::Kind::endpoint)
    return shiftspace::shift_metric(*a.end, *b.end, d.depth());

  // Words tracing the edges the two points sit on; endpoints contribute a
  // prefix long enough to resolve the meet.
  std::size_t other = std::max(a.word.size(), b.word.size());
  Word wa = a.kind == GehmanPoint::Kind::endpoint
                ? a.end->prefix(static_cast<std::int64_t>(other))
                : a.word;
  Word wb = b.kind == GehmanPoint::Kind::endpoint
                ? b.end->prefix(static_cast<std::int64_t>(other))
                : b.word;
  Rational da = depth_coord(a);
  Rational db = depth_coord(b);

  bool a_on_b_path = wa.size() <= wb.size() && lcp_len(wa, wb) == wa.size() &&
                     a.kind != GehmanPoint::Kind::endpoint;
  bool b_on_a_path = wb.size() <= wa.size() && lcp_len(wa, wb) == wb.size() &&
                     b.kind != GehmanPoint::Kind::endpoint;
  if (wa == wb && a.kind != GehmanPoint::Kind::endpoint &&
      b.kind != GehmanPoint::Kind::endpoint)
    return da > db ? da - db : db - da;  // same edge
  if (a_on_b_path) return db - da;
  if (b_on_a_path) return da - db;
  Rational meet = 1 - pow2_inv(static_cast<int>(lcp_len(wa, wb)));
  return da + db - 2 * meet;
}

bool endpoint_conjugacy_check(const Subshift& shift, int depth) {
  require(depth >= 2, "depth must be at least 2");
  GehmanDendrite d(shift, depth);
  for (const Word& w : d.nodes()) {
    if (w.empty()) {
      GehmanPoint root = GehmanPoint::branch(w);
      GehmanPoint image = g_map(root, d);
      if (image.kind != GehmanPoint::Kind::branch || !image.word.empty()) return false;
      continue;
    }
    GehmanPoint image = g_map(GehmanPoint::branch(w), d);
    if (image.kind != GehmanPoint::Kind::branch || image.word != w.substr(1)) return false;
    GehmanPoint arc_image = g_map(GehmanPoint::arc(w, Rational(1, 3)), d);
    if (w.size() == 1) {
      if (arc_image.kind != GehmanPoint::Kind::branch || !arc_image.word.empty())
        return false;
    } else if (arc_image.kind != GehmanPoint::Kind::arc ||
               arc_image.word != w.substr(1) || arc_image.t != Rational(1, 3)) {
      return false;
    }
    // Every branch point must settle on the root fixed point within |w|
    // steps, so within depth steps overall.
    GehmanPoint walk = GehmanPoint::branch(w);
    for (std::size_t step = 0; step < w.size(); ++step) walk = g_map(walk, d);
    if (walk.kind != GehmanPoint::Kind::branch || !walk.word.empty()) return false;
  }

  // Periodic endpoints, where the language admits them.
  bool found_endpoint = false;
  for (const Word& w : shift.language(depth)) {
    Word tripled = w;
    tripled += w;
    tripled += w;
    if (!shift.admissible(tripled)) continue;
    found_endpoint = true;
    SymbolicPoint x = SymbolicPoint::eventually_periodic(shift.alphabet_size(), Word(), w);
    GehmanPoint image = g_map(GehmanPoint::endpoint(x), d);
    SymbolicPoint shifted = shiftspace::sigma(x);
    if (image.kind != GehmanPoint::Kind::endpoint) return false;
    if (image.end->prefix(2 * depth) != shifted.prefix(2 * depth)) return false;
  }
  return found_endpoint;
}

}  // namespace dclab::gehman
