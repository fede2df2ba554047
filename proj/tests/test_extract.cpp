#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "glyphga/extract.hpp"
#include "glyphga/render.hpp"
#include "glyphga/synthetic.hpp"
#include "support.hpp"

using namespace glyphga;

namespace {

const Params kP;

BinaryRaster horizontal_segment() {
  BinaryRaster r(40, 9);
  for (int x = 5; x <= 34; ++x) r.set(x, 4, true);
  return r;
}

BinaryRaster plus_sign() {
  BinaryRaster r(41, 41);
  for (int x = 5; x <= 35; ++x) r.set(x, 20, true);
  for (int y = 5; y <= 35; ++y) r.set(20, y, true);
  return r;
}

BinaryRaster ring(int radius = 20) {
  BinaryRaster r(60, 60);
  const double cx = 30, cy = 30;
  for (int i = 0; i < 720; ++i) {
    const double a = 3.14159265358979 * i / 360.0;
    r.set(static_cast<int>(std::lround(cx + radius * std::cos(a))),
          static_cast<int>(std::lround(cy + radius * std::sin(a))), true);
  }
  return thin(r);
}

BinaryRaster letter_l() {
  BinaryRaster r(50, 60);
  for (int y = 5; y <= 50; ++y) r.set(8, y, true);
  for (int x = 8; x <= 40; ++x) r.set(x, 50, true);
  return r;
}

PixelChain chain_from(const std::vector<Point>& pts) {
  PixelChain c;
  c.pixels = pts;
  c.from_vertex = pts.front();
  c.to_vertex = pts.back();
  return c;
}

}  // namespace

TEST_CASE("find_nodes: a straight segment has its two end pixels") {
  const auto nodes = find_nodes(horizontal_segment());
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0] == Point{5, 4});
  CHECK(nodes[1] == Point{34, 4});
}

TEST_CASE("find_nodes: plus sign has four endpoints and one junction") {
  const BinaryRaster r = plus_sign();
  const auto nodes = find_nodes(r);
  CHECK(nodes.size() == 5);
  // Brute-force recount straight off the raster: degree-1 pixels are the
  // endpoints, strand count >= 3 marks the junction.
  int endpoints = 0, junctions = 0;
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      if (!r.at(x, y)) continue;
      int d = 0;
      int n[8];
      static constexpr int cx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
      static constexpr int cy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
      for (int k = 0; k < 8; ++k) {
        n[k] = r.in_bounds(x + cx[k], y + cy[k]) && r.at(x + cx[k], y + cy[k]) ? 1 : 0;
        d += n[k];
      }
      int strands = 0;
      for (int k = 0; k < 8; ++k)
        if (n[k] == 0 && n[(k + 1) % 8] == 1) ++strands;
      if (d == 1) ++endpoints;
      if (strands >= 3) ++junctions;
    }
  CHECK(endpoints == 4);
  CHECK(junctions == 1);
}

TEST_CASE("find_nodes: a closed ring gets exactly one designated node") {
  CHECK(find_nodes(ring()).size() == 1);
}

TEST_CASE("trace_chains: segment gives one chain between its endpoints") {
  const BinaryRaster r = horizontal_segment();
  const auto chains = trace_chains(r, find_nodes(r));
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].pixels.size() == 30);
  CHECK(chains[0].from_vertex == Point{5, 4});
  CHECK(chains[0].to_vertex == Point{34, 4});
}

TEST_CASE("trace_chains: plus sign gives four chains through the junction") {
  const BinaryRaster r = plus_sign();
  const auto nodes = find_nodes(r);
  const auto chains = trace_chains(r, nodes);
  REQUIRE(chains.size() == 4);
  const Point center{20, 20};
  int covered = 0;
  for (const auto& c : chains) {
    CHECK((c.from_vertex == center || c.to_vertex == center));
    covered += static_cast<int>(c.pixels.size()) - 2;  // interior pixels
  }
  // Every ink pixel lands in exactly one chain (endpoints shared).
  CHECK(covered + 5 == r.ink_count());
}

TEST_CASE("trace_chains: ring gives one closed chain") {
  const BinaryRaster r = ring();
  const auto chains = trace_chains(r, find_nodes(r));
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].from_vertex == chains[0].to_vertex);
  CHECK(chains[0].pixels.front() == chains[0].pixels.back());
}

TEST_CASE("classify_chain: straight, short, and curved chains") {
  std::vector<Point> straight;
  for (int i = 0; i <= 30; ++i) straight.push_back({static_cast<float>(i), 0});
  CHECK(classify_chain(chain_from(straight), kP) == EdgeKind::Line);

  CHECK(classify_chain(chain_from({{0, 0}, {1, 0}, {2, 0}}), kP) == EdgeKind::Line);

  std::vector<Point> arc;  // quarter circle, radius 25
  for (int i = 0; i <= 90; ++i) {
    const double a = 3.14159265358979 * i / 180.0;
    arc.push_back({static_cast<float>(25 * std::cos(a)), static_cast<float>(25 * std::sin(a))});
  }
  CHECK(classify_chain(chain_from(arc), kP) == EdgeKind::Curve);
}

TEST_CASE("classify_chain: reversal invariance for symmetric chains") {
  std::vector<Point> straight;
  for (int i = 0; i <= 30; ++i)
    straight.push_back({static_cast<float>(i), static_cast<float>(i / 2)});
  std::vector<Point> rev(straight.rbegin(), straight.rend());
  CHECK(classify_chain(chain_from(straight), kP) == classify_chain(chain_from(rev), kP));

  std::vector<Point> arc;
  for (int i = 0; i <= 120; ++i) {
    const double a = 3.14159265358979 * i / 180.0;
    arc.push_back({static_cast<float>(30 * std::cos(a)), static_cast<float>(30 * std::sin(a))});
  }
  std::vector<Point> arc_rev(arc.rbegin(), arc.rend());
  CHECK(classify_chain(chain_from(arc), kP) == classify_chain(chain_from(arc_rev), kP));
}

TEST_CASE("max_distance_point picks the farthest pixel, earliest on ties") {
  std::vector<Point> straight;
  for (int i = 0; i <= 12; ++i) straight.push_back({static_cast<float>(i), 0});
  CHECK(max_distance_point(chain_from(straight)) == Point{12, 0});

  CHECK(max_distance_point(chain_from({{7, 3}})) == Point{7, 3});

  // Closed ring from its designated node: the diametric pixel wins.
  const BinaryRaster r = ring();
  const auto chains = trace_chains(r, find_nodes(r));
  REQUIRE(chains.size() == 1);
  const Point start = chains[0].pixels.front();
  const Point far = max_distance_point(chains[0]);
  const double d = std::sqrt(squared_distance(start, far));
  CHECK(d >= 38.0);  // close to the 40-pixel diameter
  CHECK(d <= 42.0);
}

TEST_CASE("extract_graph: L raster gives three vertices and two lines") {
  Params p;
  const Glyph g = extract_graph(normalize_raster(thin(letter_l()), p).first, p);
  CHECK(g.vertices.size() == 3);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].kind == EdgeKind::Line);
  CHECK(g.edges[1].kind == EdgeKind::Line);
}

TEST_CASE("extract_graph: ring raster gives one vertex and one closed curve") {
  Params p;
  const Glyph g = extract_graph(normalize_raster(ring(), p).first, p);
  REQUIRE(g.vertices.size() == 1);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].kind == EdgeKind::Curve);
  CHECK(g.edges[0].start == g.edges[0].end);
  // Diametric max point: far from the start vertex.
  CHECK(squared_distance(g.edges[0].start, g.edges[0].max_point) > 80.0 * 80.0);
}

TEST_CASE("extract_graph rejects empty rasters") {
  CHECK_THROWS_AS(extract_graph(BinaryRaster(10, 10), kP), EmptyImage);
}

TEST_CASE("extract_graph: edges land on vertices and vertices respect beta") {
  Params p;
  for (char32_t c : std::u32string(U"ABEHKMQRSWXY")) {
    for (const Glyph& ideal : letter_styles(c, p)) {
      const Glyph g = extract_graph(normalize_raster(thin(render_glyph(ideal, p)), p).first, p);
      for (const Edge& e : g.edges) {
        CHECK(vertex_index_near(g, e.start) >= 0);
        CHECK(vertex_index_near(g, e.end) >= 0);
      }
      for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
          CHECK(squared_distance(g.vertices[i], g.vertices[j]) >= p.beta * p.beta - 1e-6);
    }
  }
}

TEST_CASE("re-extraction keeps vertex counts and edge kinds on the block capitals") {
  Params p;
  for (const LabeledImage& img : corpus_templates(p)) {
    const Glyph g = extract_graph(normalize_raster(thin(img.image), p).first, p);
    const BinaryRaster again = normalize_raster(thin(render_glyph(g, p)), p).first;
    const Glyph g2 = extract_graph(again, p);
    INFO(img.name);
    CHECK(g2.vertices.size() == g.vertices.size());
    auto kinds = [](const Glyph& gl) {
      std::map<EdgeKind, int> m;
      for (const Edge& e : gl.edges) ++m[e.kind];
      return m;
    };
    CHECK(kinds(g2) == kinds(g));
  }
}
