#include "dclab/gehman.hpp"

#include <stdexcept>

#include "../vendor/doctest.h"

using namespace dclab;
using namespace dclab::gehman;
using dclab::shiftspace::SymbolicPoint;

TEST_CASE("full binary tree counts and geometry") {
  GehmanDendrite d = build_gehman(2, 2);
  CHECK(d.nodes().size() == 7);  // root, 0, 1, 00, 01, 10, 11
  CHECK(d.has_node(""));
  CHECK(d.has_node("01"));
  CHECK_FALSE(d.has_node("012"));
  CHECK(d.branch_degree("") == 2);
  CHECK(d.branch_degree("0") == 3);
  // the finite skeleton is a cut of the infinite tree, so the deepest layer
  // still reports its true degree
  CHECK(d.branch_degree("00") == 3);
  CHECK(d.edge_length("0") == Rational(1, 2));
  CHECK(d.edge_length("01") == Rational(1, 4));
  CHECK(d.root_distance("") == Rational(0));
  CHECK(d.root_distance("0") == Rational(1, 2));
  CHECK(d.root_distance("01") == Rational(3, 4));
}

TEST_CASE("subshift tree drops inadmissible words") {
  GehmanDendrite d = subdendrite(shiftspace::Subshift::golden_mean(), 2);
  CHECK(d.nodes().size() == 6);  // "", 0, 1, 00, 01, 10
  CHECK_FALSE(d.has_node("11"));
  CHECK(d.branch_degree("1") == 2);  // only "10" extends, plus the parent edge
  CHECK(d.branch_degree("0") == 3);

  shiftspace::Subshift dead(2, {"0", "11"});
  CHECK_THROWS_AS(subdendrite(dead, 3), std::invalid_argument);
}

TEST_CASE("arc distances combine path length and depth") {
  GehmanDendrite d = build_gehman(2, 3);
  GehmanPoint root = GehmanPoint::branch("");
  GehmanPoint c0 = GehmanPoint::branch("0");
  GehmanPoint c1 = GehmanPoint::branch("1");
  GehmanPoint c01 = GehmanPoint::branch("01");

  CHECK(arc_distance(root, c0, d) == Rational(1, 2));
  CHECK(arc_distance(c0, c01, d) == Rational(1, 4));
  CHECK(arc_distance(c0, c1, d) == Rational(1));          // through the root
  CHECK(arc_distance(c01, c1, d) == Rational(5, 4));      // 3/4 + 1/2
  CHECK(arc_distance(root, root, d) == Rational(0));

  GehmanPoint mid = GehmanPoint::arc("0", Rational(1, 2));
  CHECK(arc_distance(root, mid, d) == Rational(1, 4));
  CHECK(arc_distance(mid, c0, d) == Rational(1, 4));
  GehmanPoint other = GehmanPoint::arc("1", Rational(1, 2));
  CHECK(arc_distance(mid, other, d) == Rational(1, 2));

  // endpoints against branch points use the endpoint's finite depth
  SymbolicPoint zeros = SymbolicPoint::eventually_periodic(2, "", "0");
  GehmanPoint e = GehmanPoint::endpoint(zeros);
  CHECK(arc_distance(e, GehmanPoint::branch("000"), d) == Rational(1, 8));

  // endpoint pairs fall back to the shift metric
  SymbolicPoint ones = SymbolicPoint::eventually_periodic(2, "", "1");
  CHECK(arc_distance(e, GehmanPoint::endpoint(ones), d) == Rational(1));
  SymbolicPoint near = SymbolicPoint::explicit_word(2, "001");
  CHECK(arc_distance(e, GehmanPoint::endpoint(near), d) == Rational(1, 4));
  // disagreements past the horizon are not resolved at this depth
  SymbolicPoint far = SymbolicPoint::explicit_word(2, "0001");
  CHECK(arc_distance(e, GehmanPoint::endpoint(far), d) == Rational(0));
}

TEST_CASE("letter-dropping map on branches, arcs, endpoints") {
  GehmanDendrite d = build_gehman(2, 3);
  GehmanPoint root = GehmanPoint::branch("");
  CHECK(g_map(root, d).word == "");
  CHECK(g_map(GehmanPoint::branch("01"), d).word == "1");
  CHECK(g_map(GehmanPoint::branch("0"), d).word == "");

  // a first-level arc point collapses into the root
  GehmanPoint a = g_map(GehmanPoint::arc("1", Rational(1, 3)), d);
  CHECK(a.kind == GehmanPoint::Kind::branch);
  CHECK(a.word == "");
  // deeper arcs keep their parameter
  GehmanPoint b = g_map(GehmanPoint::arc("10", Rational(1, 3)), d);
  CHECK(b.kind == GehmanPoint::Kind::arc);
  CHECK(b.word == "0");
  CHECK(b.t == Rational(1, 3));

  SymbolicPoint x = SymbolicPoint::explicit_word(2, "011");
  GehmanPoint e = g_map(GehmanPoint::endpoint(x), d);
  REQUIRE(e.kind == GehmanPoint::Kind::endpoint);
  CHECK(e.end->prefix(4) == "1100");

  // branch points reach the root in exactly their word length
  GehmanPoint walk = GehmanPoint::branch("110");
  for (int i = 0; i < 3; ++i) {
    CHECK(walk.word.size() == static_cast<std::size_t>(3 - i));
    walk = g_map(walk, d);
  }
  CHECK(walk.word.empty());
  CHECK(g_map(walk, d).word.empty());
}

TEST_CASE("finite-depth conjugacy certificates") {
  CHECK(endpoint_conjugacy_check(shiftspace::Subshift::full_shift(2), 4));
  CHECK(endpoint_conjugacy_check(shiftspace::Subshift::full_shift(3), 3));
  CHECK(endpoint_conjugacy_check(shiftspace::Subshift::golden_mean(), 4));
  CHECK_THROWS_AS(endpoint_conjugacy_check(shiftspace::Subshift::full_shift(2), 1),
                  std::invalid_argument);
}

TEST_CASE("json and svg smoke") {
  GehmanDendrite d = subdendrite(shiftspace::Subshift::golden_mean(), 3);
  std::string j = d.to_json_text();
  CHECK(j.find("\"alphabet_size\"") != std::string::npos);
  CHECK(j.find("\"forbidden_words\"") != std::string::npos);
  CHECK(j.find("\"nodes\"") != std::string::npos);
  CHECK(j.find("\"edges\"") != std::string::npos);
}
