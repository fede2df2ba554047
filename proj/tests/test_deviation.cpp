#include <doctest.h>

#include <random>

#include "glyphga/deviation.hpp"
#include "support.hpp"

using namespace glyphga;

namespace {
const Params kP;  // defaults: beta 10, eta 800
}

TEST_CASE("d1 on hand-evaluated pairs") {
  const Edge a = line_edge({0, 0}, {10, 0});
  CHECK(d1(a, a, kP) == 0.0);
  const Edge b = line_edge({2, 0}, {10, 4});
  CHECK(d1(a, b, kP) == 20.0);  // 4 + 16
  const Edge c = curve_edge({0, 0}, {10, 0}, {10, 0});
  CHECK(d1(a, c, kP) == kP.eta);  // kind mismatch on identical geometry
}

TEST_CASE("d2 crosses start and end") {
  const Edge a = line_edge({0, 0}, {10, 0});
  const Edge rev = line_edge({10, 0}, {0, 0});
  CHECK(d2(a, rev, kP) == 0.0);
  CHECK(d2(a, a, kP) == 200.0);  // 100 + 100
}

TEST_CASE("near-closed curves compare max points") {
  // Two near-circles whose starts coincide; ends are within beta of starts.
  const Edge c1 = curve_edge({0, 0}, {1, 0}, {20, 0});
  const Edge c2 = curve_edge({0, 0}, {1, 0}, {26, 0});
  CHECK(near_closed(c1, kP));
  // d1 start term 0, max term (20-26)^2 = 36.
  CHECK(d1(c1, c2, kP) == 36.0);
  // d2 swaps the max points into the crossed slots:
  // (s1-m2)^2 + (m1-s2)^2 = 26^2 + 20^2.
  CHECK(d2(c1, c2, kP) == 26.0 * 26.0 + 20.0 * 20.0);
  CHECK(edge_deviation(&c1, &c2, kP) == 36.0);
}

TEST_CASE("open curve pairs keep their end points") {
  const Edge c1 = curve_edge({0, 0}, {30, 0}, {16, 26});
  const Edge c2 = curve_edge({0, 0}, {30, 0}, {15, 27});
  CHECK(!near_closed(c1, kP));
  CHECK(d1(c1, c2, kP) == 0.0);  // ends compared, not max points
}

TEST_CASE("edge_deviation null cases") {
  const Edge a = line_edge({0, 0}, {3, 4});
  CHECK(edge_deviation(&a, nullptr, kP) == 25.0);
  CHECK(edge_deviation(nullptr, &a, kP) == 25.0);
  const Edge near_circle = curve_edge({0, 0}, {1, 0}, {20, 0});
  CHECK(edge_deviation(&near_circle, nullptr, kP) == 400.0);
  CHECK_THROWS_AS(edge_deviation(nullptr, nullptr, kP), BothNull);
}

TEST_CASE("edge_deviation is symmetric") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Glyph g1 = oracle::random_glyph(rng, kP, 4, 3);
    const Glyph g2 = oracle::random_glyph(rng, kP, 4, 3);
    for (const Edge& e1 : g1.edges)
      for (const Edge& e2 : g2.edges)
        CHECK(edge_deviation(&e1, &e2, kP) == edge_deviation(&e2, &e1, kP));
  }
}

TEST_CASE("graph_deviation hand traces") {
  Glyph g1;
  g1.vertices = {{0, 0}, {10, 0}};
  g1.edges = {line_edge({0, 0}, {10, 0})};
  Glyph g2 = g1;
  g2.vertices.push_back({0, 6});
  g2.edges.push_back(line_edge({0, 0}, {0, 6}));
  CHECK(graph_deviation(g1, g2, kP) == 36.0);  // perfect pair + leftover 36

  Glyph empty;
  Glyph single;
  single.vertices = {{0, 0}, {3, 4}};
  single.edges = {line_edge({0, 0}, {3, 4})};
  CHECK(graph_deviation(empty, single, kP) == 25.0);
  CHECK(graph_deviation(empty, empty, kP) == 0.0);
}

TEST_CASE("self deviation is exactly zero") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const Glyph g = oracle::random_glyph(rng, kP);
    CHECK(graph_deviation(g, g, kP) == 0.0);
  }
}

TEST_CASE("greedy never undercuts the exhaustive optimum") {
  std::mt19937_64 rng(31);
  bool equality_seen = false;
  for (int i = 0; i < 200; ++i) {
    const Glyph g1 = oracle::random_glyph(rng, kP, 5, 6);
    const Glyph g2 = i == 0 ? g1 : oracle::random_glyph(rng, kP, 5, 6);
    const double greedy = graph_deviation(g1, g2, kP);
    const double optimal = oracle::optimal_assignment_deviation(g1, g2, kP);
    CHECK(greedy >= optimal - 1e-9);
    if (greedy <= optimal + 1e-9) equality_seen = true;
  }
  CHECK(equality_seen);
}

TEST_CASE("a leftover-bound extra edge adds its null deviation and never helps") {
  // With |G2| >= |G1| every G1 edge is already paired, so an extra edge that
  // pairs worse than anything present can only accrete its own null term.
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const Glyph g1 = oracle::random_glyph(rng, kP, 4, 3);
    const Glyph g2 = oracle::random_glyph(rng, kP, 5, 5);
    if (g2.edges.size() < g1.edges.size()) continue;
    const double before = graph_deviation(g1, g2, kP);
    Glyph bigger = g2;
    bigger.vertices.push_back({400, 400});
    bigger.vertices.push_back({403, 404});
    bigger.edges.push_back(line_edge({400, 400}, {403, 404}));
    const double after = graph_deviation(g1, bigger, kP);
    CHECK(after >= before - 1e-9);
    CHECK(after == doctest::Approx(before + 25.0));  // the remote edge's null term
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("translation moves the deviation off zero") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    const Glyph g = oracle::random_glyph(rng, kP);
    const double t = 0.5 + oracle::urand(rng) * 5.0;
    Glyph moved = g;
    for (Point& v : moved.vertices) v.x += static_cast<float>(t);
    for (Edge& e : moved.edges) {
      e.start.x += static_cast<float>(t);
      e.end.x += static_cast<float>(t);
      e.max_point.x += static_cast<float>(t);
    }
    CHECK(graph_deviation(g, moved, kP) > 0.0);
  }
}
